/* The public header must compile as C. */
#include <stdio.h>

#include "catkit/catkit.h"

int main(void)
{
    catkit_medium* m = NULL;
    double delta = 0.0;
    if (catkit_medium_parse("pec", &m) != CATKIT_OK) return 1;
    if (catkit_phase_shift(m, 1, 1.0, 1.0, &delta) != CATKIT_OK) return 1;
    catkit_medium_free(m);
    if (!(delta > 0.0)) return 1;
    if (catkit_phase_shift(NULL, 1, 1.0, 1.0, &delta) != CATKIT_E_INVALID_ARGUMENT) return 1;
    printf("%s\n", catkit_last_error());
    return 0;
}
