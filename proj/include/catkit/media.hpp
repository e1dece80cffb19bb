#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace catkit {

// Units throughout the library: lengths in units of the inclusion radius a,
// wavevectors in 1/a, c = 1 (so frequencies and wavevectors coincide).

struct Vacuum {
    friend bool operator==(const Vacuum&, const Vacuum&) = default;
};

/// epsilon(k) = 1 - kp^2 / k^2
struct Drude {
    double kp = 0.0;
    friend bool operator==(const Drude&, const Drude&) = default;
};

struct Dielectric {
    double eps = 1.0;
    friend bool operator==(const Dielectric&, const Dielectric&) = default;
};

/// Boundary-condition flag: the field vanishes on the inclusion surface.
struct PerfectConductor {
    friend bool operator==(const PerfectConductor&, const PerfectConductor&) = default;
};

class Medium {
public:
    using Variant = std::variant<Vacuum, Drude, Dielectric, PerfectConductor>;

    Medium() = default;

    static Medium vacuum() { return Medium(Vacuum{}); }
    static Medium drude(double kp);
    static Medium dielectric(double eps);
    static Medium perfect_conductor() { return Medium(PerfectConductor{}); }

    [[nodiscard]] const Variant& variant() const noexcept { return v_; }
    [[nodiscard]] bool is_vacuum() const noexcept { return std::holds_alternative<Vacuum>(v_); }
    [[nodiscard]] bool is_perfect_conductor() const noexcept { return std::holds_alternative<PerfectConductor>(v_); }
    [[nodiscard]] bool has_finite_permittivity() const noexcept { return !is_perfect_conductor(); }

    /// Plasma wavevector for Drude media, 0 otherwise.
    [[nodiscard]] double plasma_wavevector() const noexcept;

    friend bool operator==(const Medium&, const Medium&) = default;

private:
    explicit Medium(Variant v) : v_(v) {}
    Variant v_{Vacuum{}};
};

double permittivity(const Medium& m, double k);

/// n^2 = epsilon. Negative values mean a purely imaginary index.
double index_squared(const Medium& m, double k);

/// Parses `vacuum`, `drude:kp=<float>`, `dielectric:eps=<float>` or `pec`.
Medium parse_medium(std::string_view text);

/// Canonical textual form, accepted by parse_medium.
std::string to_string(const Medium& m);

}  // namespace catkit
