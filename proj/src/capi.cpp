#include "catkit/catkit.h"

#include <algorithm>
#include <cstring>
#include <span>
#include <new>
#include <string>
#include <vector>

#include "catkit/analysis.hpp"
#include "catkit/error.hpp"
#include "catkit/gaussian.hpp"
#include "catkit/media.hpp"
#include "catkit/modes.hpp"
#include "catkit/overlap.hpp"
#include "catkit/parallel.hpp"
#include "catkit/scattering.hpp"
#include "catkit/specfun.hpp"

struct catkit_medium {
    catkit::Medium m;
};

struct catkit_curve {
    std::vector<double> k;
    std::vector<double> delta;
};

struct catkit_spectrum {
    catkit::ModeSpectrum s;
};

struct catkit_overlap {
    catkit::OverlapMatrix o;
    catkit::OverlapResult r;
};

struct catkit_table {
    std::vector<std::string> columns;
    std::vector<double> data;
};

namespace {

thread_local std::string g_last_error;

catkit_status to_status(catkit::ErrorCode code)
{
    using catkit::ErrorCode;
    switch (code) {
    case ErrorCode::invalid_argument: return CATKIT_E_INVALID_ARGUMENT;
    case ErrorCode::domain: return CATKIT_E_DOMAIN;
    case ErrorCode::unsupported_order: return CATKIT_E_UNSUPPORTED_ORDER;
    case ErrorCode::overflow: return CATKIT_E_OVERFLOW;
    case ErrorCode::no_finite_permittivity: return CATKIT_E_NO_FINITE_PERMITTIVITY;
    case ErrorCode::pole: return CATKIT_E_POLE;
    case ErrorCode::resolution: return CATKIT_E_RESOLUTION;
    case ErrorCode::pairing_ambiguity: return CATKIT_E_PAIRING_AMBIGUITY;
    case ErrorCode::missed_root: return CATKIT_E_MISSED_ROOT;
    case ErrorCode::quadrature: return CATKIT_E_QUADRATURE;
    case ErrorCode::degenerate: return CATKIT_E_DEGENERATE;
    case ErrorCode::insufficient_data: return CATKIT_E_INSUFFICIENT_DATA;
    case ErrorCode::io: return CATKIT_E_IO;
    }
    return CATKIT_E_INTERNAL;
}

template <class F>
catkit_status guard(F&& body)
{
    try {
        body();
        return CATKIT_OK;
    } catch (const catkit::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return CATKIT_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CATKIT_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return CATKIT_E_INTERNAL;
    }
}

void require(const void* p, const char* name)
{
    if (p == nullptr) catkit::fail(catkit::ErrorCode::invalid_argument, std::string(name) + " must not be NULL");
}

catkit::SpectrumMethod to_method(catkit_method m)
{
    if (m == CATKIT_METHOD_SHIFT) return catkit::SpectrumMethod::shift;
    if (m == CATKIT_METHOD_EXACT) return catkit::SpectrumMethod::exact;
    catkit::fail(catkit::ErrorCode::invalid_argument, "unknown spectrum method");
}

catkit::OverlapSource to_source(catkit_source s)
{
    if (s == CATKIT_SOURCE_ASYMPTOTIC) return catkit::OverlapSource::asymptotic;
    if (s == CATKIT_SOURCE_QUADRATURE) return catkit::OverlapSource::quadrature;
    catkit::fail(catkit::ErrorCode::invalid_argument, "unknown overlap source");
}

Eigen::MatrixXd matrix_from(const double* D, std::size_t n)
{
    if (n > 0) require(D, "D");
    Eigen::MatrixXd M(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = D[i * n + j];
    }
    return M;
}

std::span<const double> span_of(const double* p, std::size_t n, const char* name)
{
    if (n > 0) require(p, name);
    return {p, n};
}

catkit_overlap_result to_c(const catkit::OverlapResult& r) { return {r.N, r.log_abs_det_D, r.sign_det, r.log_S}; }

}  // namespace

extern "C" {

const char* catkit_version(void) { return "1.0.0"; }

const char* catkit_status_name(catkit_status status)
{
    switch (status) {
    case CATKIT_OK: return "ok";
    case CATKIT_E_INVALID_ARGUMENT: return "invalid_argument";
    case CATKIT_E_DOMAIN: return "domain";
    case CATKIT_E_UNSUPPORTED_ORDER: return "unsupported_order";
    case CATKIT_E_OVERFLOW: return "overflow";
    case CATKIT_E_NO_FINITE_PERMITTIVITY: return "no_finite_permittivity";
    case CATKIT_E_POLE: return "pole";
    case CATKIT_E_RESOLUTION: return "resolution";
    case CATKIT_E_PAIRING_AMBIGUITY: return "pairing_ambiguity";
    case CATKIT_E_MISSED_ROOT: return "missed_root";
    case CATKIT_E_QUADRATURE: return "quadrature";
    case CATKIT_E_DEGENERATE: return "degenerate";
    case CATKIT_E_INSUFFICIENT_DATA: return "insufficient_data";
    case CATKIT_E_IO: return "io";
    case CATKIT_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* catkit_last_error(void) { return g_last_error.c_str(); }

catkit_status catkit_set_threads(int n)
{
    return guard([&] { catkit::set_thread_count(n); });
}

int catkit_get_threads(void) { return catkit::thread_count(); }

catkit_status catkit_sph_bessel(int l, double x, double* j, double* jp, double* y, double* yp)
{
    return guard([&] {
        const catkit::BesselPair b = catkit::sph_bessel(l, x);
        if (j) *j = b.j;
        if (jp) *jp = b.jp;
        if (y) *y = b.y;
        if (yp) *yp = b.yp;
    });
}

catkit_status catkit_mod_sph_bessel_i(int l, double x, double* value, double* derivative)
{
    return guard([&] {
        const catkit::ValueDeriv v = catkit::mod_sph_bessel_i(l, x);
        if (value) *value = v.value;
        if (derivative) *derivative = v.derivative;
    });
}

catkit_status catkit_medium_parse(const char* text, catkit_medium** out)
{
    return guard([&] {
        require(text, "text");
        require(out, "out");
        *out = new catkit_medium{catkit::parse_medium(text)};
    });
}

void catkit_medium_free(catkit_medium* m) { delete m; }

catkit_status catkit_medium_describe(const catkit_medium* m, char* buf, size_t cap, size_t* len)
{
    return guard([&] {
        require(m, "medium");
        const std::string s = catkit::to_string(m->m);
        if (len) *len = s.size();
        if (buf && cap > 0) {
            const std::size_t n = std::min(cap - 1, s.size());
            std::memcpy(buf, s.data(), n);
            buf[n] = '\0';
        }
    });
}

catkit_status catkit_permittivity(const catkit_medium* m, double k, double* eps)
{
    return guard([&] {
        require(m, "medium");
        require(eps, "eps");
        *eps = catkit::permittivity(m->m, k);
    });
}

catkit_status catkit_phase_shift(const catkit_medium* m, int l, double k, double a, double* delta)
{
    return guard([&] {
        require(m, "medium");
        require(delta, "delta");
        *delta = catkit::phase_shift(m->m, l, k, a);
    });
}

catkit_status catkit_phase_shift_unwrapped(const catkit_medium* m, int l, double a, const double* k, size_t n,
                                           double* delta)
{
    return guard([&] {
        require(m, "medium");
        require(delta, "delta");
        const std::vector<double> d = catkit::unwrapped_phase_shift(m->m, l, a, span_of(k, n, "k"));
        std::copy(d.begin(), d.end(), delta);
    });
}

catkit_status catkit_delta_oracle(const catkit_medium* m, int l, double a, double R, int s, double* delta)
{
    return guard([&] {
        require(m, "medium");
        require(delta, "delta");
        *delta = catkit::delta_oracle(m->m, l, a, R, s);
    });
}

catkit_status catkit_phase_shift_curve(const catkit_medium* m, int l, double a, const double* k, size_t n,
                                       catkit_curve** out)
{
    return guard([&] {
        require(m, "medium");
        require(out, "out");
        const catkit::PhaseShiftCurve c = catkit::phase_shift_curve(m->m, l, a, span_of(k, n, "k"));
        auto* curve = new catkit_curve;
        for (const auto& s : c.samples) {
            curve->k.push_back(s.k);
            curve->delta.push_back(s.delta);
        }
        *out = curve;
    });
}

size_t catkit_curve_size(const catkit_curve* c) { return c ? c->k.size() : 0; }

catkit_status catkit_curve_data(const catkit_curve* c, double* k, double* delta)
{
    return guard([&] {
        require(c, "curve");
        if (k) std::copy(c->k.begin(), c->k.end(), k);
        if (delta) std::copy(c->delta.begin(), c->delta.end(), delta);
    });
}

void catkit_curve_free(catkit_curve* c) { delete c; }

catkit_status catkit_empty_cavity_wavevectors(double R, int n, double* q)
{
    return guard([&] {
        require(q, "q");
        const std::vector<double> v = catkit::empty_cavity_wavevectors(R, n);
        std::copy(v.begin(), v.end(), q);
    });
}

catkit_status catkit_spectrum_build(const catkit_medium* m, double R, int n, catkit_method method,
                                    catkit_spectrum** out)
{
    return guard([&] {
        require(m, "medium");
        require(out, "out");
        const catkit::CavityGeometry g{1.0, R, 1};
        *out = new catkit_spectrum{catkit::build_spectrum(g, m->m, n, to_method(method))};
    });
}

size_t catkit_spectrum_size(const catkit_spectrum* s) { return s ? s->s.size() : 0; }

catkit_status catkit_spectrum_data(const catkit_spectrum* s, double* q, double* k, double* delta)
{
    return guard([&] {
        require(s, "spectrum");
        if (q) std::copy(s->s.q.begin(), s->s.q.end(), q);
        if (k) std::copy(s->s.k.begin(), s->s.k.end(), k);
        if (delta) std::copy(s->s.delta.begin(), s->s.delta.end(), delta);
    });
}

void catkit_spectrum_free(catkit_spectrum* s) { delete s; }

catkit_status catkit_mode_overlap_asymptotic(double k, double q, double R, double* out)
{
    return guard([&] {
        require(out, "out");
        *out = catkit::mode_overlap_asymptotic(k, q, R);
    });
}

catkit_status catkit_mode_overlap_quadrature(const catkit_medium* m, double R, double k, double q, double* out)
{
    return guard([&] {
        require(m, "medium");
        require(out, "out");
        *out = catkit::mode_overlap_quadrature(catkit::CavityGeometry{1.0, R, 1}, m->m, k, q);
    });
}

catkit_status catkit_overlap_build(const catkit_spectrum* s, catkit_source source, catkit_overlap** out)
{
    return guard([&] {
        require(s, "spectrum");
        require(out, "out");
        catkit::OverlapMatrix o = catkit::build_overlap_matrix(s->s, to_source(source));
        const catkit::OverlapResult r = catkit::partial_overlap_S(s->s, o);
        *out = new catkit_overlap{std::move(o), r};
    });
}

size_t catkit_overlap_size(const catkit_overlap* o) { return o ? static_cast<size_t>(o->o.D.rows()) : 0; }

catkit_status catkit_overlap_matrix(const catkit_overlap* o, double* D)
{
    return guard([&] {
        require(o, "overlap");
        require(D, "D");
        const auto n = o->o.D.rows();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) D[i * n + j] = o->o.D(i, j);
        }
    });
}

catkit_status catkit_overlap_result_get(const catkit_overlap* o, catkit_overlap_result* out)
{
    return guard([&] {
        require(o, "overlap");
        require(out, "out");
        *out = to_c(o->r);
    });
}

void catkit_overlap_free(catkit_overlap* o) { delete o; }

catkit_status catkit_log_abs_det(const double* D, size_t n, double* log_abs, int* sign)
{
    return guard([&] {
        const catkit::LogDet d = catkit::log_abs_det(matrix_from(D, n));
        if (log_abs) *log_abs = d.log_abs;
        if (sign) *sign = d.sign;
    });
}

catkit_status catkit_partial_overlap(const double* q, const double* k, const double* D, size_t n,
                                     catkit_overlap_result* out)
{
    return guard([&] {
        require(out, "out");
        *out = to_c(catkit::partial_overlap(span_of(q, n, "q"), span_of(k, n, "k"), matrix_from(D, n)));
    });
}

catkit_status catkit_overlap_quadrature_oracle(const double* q, const double* k, const double* D, size_t n, double* S)
{
    return guard([&] {
        require(S, "S");
        *S = catkit::overlap_quadrature_oracle(span_of(q, n, "q"), span_of(k, n, "k"), matrix_from(D, n));
    });
}

catkit_status catkit_fit_power_law(const double* N, const double* log_value, size_t n, catkit_fit* out)
{
    return guard([&] {
        require(out, "out");
        const catkit::ExponentFit f = catkit::fit_power_law(span_of(N, n, "N"), span_of(log_value, n, "log_value"));
        *out = {f.eta, f.stderr_, f.n_points, f.N_min, f.N_max};
    });
}

size_t catkit_table_rows(const catkit_table* t)
{
    return t && !t->columns.empty() ? t->data.size() / t->columns.size() : 0;
}

size_t catkit_table_cols(const catkit_table* t) { return t ? t->columns.size() : 0; }

const char* catkit_table_column(const catkit_table* t, size_t col)
{
    return t && col < t->columns.size() ? t->columns[col].c_str() : nullptr;
}

const double* catkit_table_data(const catkit_table* t) { return t ? t->data.data() : nullptr; }

void catkit_table_free(catkit_table* t) { delete t; }

catkit_status catkit_scan_fixed_ratio(const catkit_medium* m, double ratio, const int* N, size_t n,
                                      catkit_method method, catkit_source source, catkit_table** out)
{
    return guard([&] {
        require(m, "medium");
        require(out, "out");
        if (n > 0) require(N, "N");
        catkit::ScanOptions opt;
        opt.method = to_method(method);
        opt.source = to_source(source);
        const catkit::ScalingRun run = catkit::scan_fixed_ratio(m->m, ratio, std::span<const int>(N, n), opt);
        auto* t = new catkit_table{{"N", "R_over_a", "log_abs_det_D", "log_S"}, {}};
        for (const auto& r : run.rows) t->data.insert(t->data.end(), {double(r.N), r.R_over_a, r.log_abs_det_D, r.log_S});
        *out = t;
    });
}

catkit_status catkit_contour_scan(const catkit_medium* m, const int* N, size_t nN, const double* R_over_a, size_t nR,
                                  catkit_table** out)
{
    return guard([&] {
        require(m, "medium");
        require(out, "out");
        if (nN > 0) require(N, "N");
        const auto grid = catkit::contour_scan(m->m, std::span<const int>(N, nN), span_of(R_over_a, nR, "R_over_a"));
        auto* t = new catkit_table{{"N", "R_over_a", "log_abs_det_D"}, {}};
        for (const auto& r : grid) t->data.insert(t->data.end(), {double(r.N), r.R_over_a, r.log_abs_det_D});
        *out = t;
    });
}

catkit_status catkit_contour_ridge(const catkit_table* contour, double* ratio, int* lines)
{
    return guard([&] {
        require(contour, "contour");
        const std::vector<std::string> expect{"N", "R_over_a", "log_abs_det_D"};
        if (contour->columns != expect) {
            catkit::fail(catkit::ErrorCode::invalid_argument, "contour_ridge needs a contour table");
        }
        std::vector<catkit::ContourRow> grid;
        for (std::size_t i = 0; i + 2 < contour->data.size(); i += 3) {
            grid.push_back({static_cast<int>(contour->data[i]), contour->data[i + 1], contour->data[i + 2]});
        }
        const catkit::RidgeEstimate r = catkit::contour_ridge(grid);
        if (ratio) *ratio = r.ratio;
        if (lines) *lines = r.lines;
    });
}

catkit_status catkit_eta_vs_delta(const catkit_medium* m, const double* ratios, size_t n_ratios, const int* N, size_t nN,
                                  catkit_table** out)
{
    return guard([&] {
        require(m, "medium");
        require(out, "out");
        if (nN > 0) require(N, "N");
        const auto rows = catkit::exponent_vs_phase_shift(m->m, span_of(ratios, n_ratios, "ratios"),
                                                          std::span<const int>(N, nN));
        auto* t = new catkit_table{{"ratio", "k_a", "delta", "eta", "eta_stderr"}, {}};
        for (const auto& r : rows) t->data.insert(t->data.end(), {r.ratio, r.k_a, r.delta, r.eta, r.eta_stderr});
        *out = t;
    });
}

catkit_status catkit_pc_check(double ratio, int N, double* computed_log_S, double* closed_form_log_S)
{
    return guard([&] {
        const catkit::PcCheck c = catkit::pc_overlap_check(ratio, N);
        if (computed_log_S) *computed_log_S = c.computed_log_S;
        if (closed_form_log_S) *closed_form_log_S = c.closed_form_log_S;
    });
}

catkit_status catkit_selftest(catkit_selftest_cb cb, void* user, int* failures)
{
    return guard([&] {
        int failed = 0;
        for (const auto& r : catkit::selftest()) {
            if (!r.passed) ++failed;
            if (cb) cb(user, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str());
        }
        if (failures) *failures = failed;
    });
}

}  // extern "C"
