#include "catkit/media.hpp"

#include <cstdlib>
#include <cmath>
#include <cstdio>

#include "catkit/error.hpp"

namespace catkit {

Medium Medium::drude(double kp)
{
    if (!(kp > 0.0) || !std::isfinite(kp)) {
        fail(ErrorCode::invalid_argument, "media: Drude plasma wavevector must be finite and > 0");
    }
    return Medium(Drude{kp});
}

Medium Medium::dielectric(double eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        fail(ErrorCode::invalid_argument, "media: dielectric permittivity must be finite and > 0");
    }
    return Medium(Dielectric{eps});
}

double Medium::plasma_wavevector() const noexcept
{
    if (const auto* d = std::get_if<Drude>(&v_)) return d->kp;
    return 0.0;
}

double permittivity(const Medium& m, double k)
{
    if (!(k > 0.0)) fail(ErrorCode::domain, "media: permittivity requires k > 0");
    struct Visitor {
        double k;
        double operator()(const Vacuum&) const { return 1.0; }
        double operator()(const Drude& d) const { return 1.0 - (d.kp / k) * (d.kp / k); }
        double operator()(const Dielectric& d) const { return d.eps; }
        double operator()(const PerfectConductor&) const
        {
            fail(ErrorCode::no_finite_permittivity, "media: a perfect conductor has no finite permittivity");
        }
    };
    return std::visit(Visitor{k}, m.variant());
}

double index_squared(const Medium& m, double k) { return permittivity(m, k); }

namespace {

double parse_parameter(std::string_view text, std::string_view key)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || text.substr(0, eq) != key) {
        fail(ErrorCode::invalid_argument, "media: expected '" + std::string(key) + "=<float>', got '" +
                                              std::string(text) + "'");
    }
    const std::string value(text.substr(eq + 1));
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
        fail(ErrorCode::invalid_argument, "media: cannot parse number '" + value + "'");
    }
    return v;
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
        char shorter[32];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

}  // namespace

Medium parse_medium(std::string_view text)
{
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    if (head == "vacuum" && colon == std::string_view::npos) return Medium::vacuum();
    if (head == "pec" && colon == std::string_view::npos) return Medium::perfect_conductor();
    if (head == "drude" && colon != std::string_view::npos) return Medium::drude(parse_parameter(tail, "kp"));
    if (head == "dielectric" && colon != std::string_view::npos) {
        return Medium::dielectric(parse_parameter(tail, "eps"));
    }
    fail(ErrorCode::invalid_argument, "media: unrecognised medium '" + std::string(text) +
                                          "' (expected vacuum, drude:kp=<f>, dielectric:eps=<f> or pec)");
}

std::string to_string(const Medium& m)
{
    struct Visitor {
        std::string operator()(const Vacuum&) const { return "vacuum"; }
        std::string operator()(const Drude& d) const { return "drude:kp=" + format_number(d.kp); }
        std::string operator()(const Dielectric& d) const { return "dielectric:eps=" + format_number(d.eps); }
        std::string operator()(const PerfectConductor&) const { return "pec"; }
    };
    return std::visit(Visitor{}, m.variant());
}

}  // namespace catkit
