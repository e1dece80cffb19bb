// Command-line front end for libcatkit. Lengths are in units of the inclusion
// radius a.

#include <charconv>
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catkit/catkit.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
    catkit_status status;
    LibraryError(catkit_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(catkit_status s, const std::string& what)
{
    if (s != CATKIT_OK) {
        throw LibraryError(s, what + " failed (" + catkit_status_name(s) + "): " + catkit_last_error());
    }
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using MediumPtr = std::unique_ptr<catkit_medium, Deleter<catkit_medium, catkit_medium_free>>;
using SpectrumPtr = std::unique_ptr<catkit_spectrum, Deleter<catkit_spectrum, catkit_spectrum_free>>;
using OverlapPtr = std::unique_ptr<catkit_overlap, Deleter<catkit_overlap, catkit_overlap_free>>;
using TablePtr = std::unique_ptr<catkit_table, Deleter<catkit_table, catkit_table_free>>;

std::string number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

// "a:b:step" (inclusive) or a comma-separated list.
template <class T>
std::vector<T> parse_list(const std::string& text, const char* what)
{
    std::vector<T> out;
    const auto parse_one = [&](const std::string& s) -> T {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            if constexpr (std::is_integral_v<T>) {
                if (v != std::floor(v)) throw std::invalid_argument(s);
            }
            return static_cast<T>(v);
        } catch (const std::exception&) {
            throw UsageError(std::string("bad ") + what + " value '" + s + "'");
        }
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError(std::string(what) + " range must be start:stop:step");
        const T start = parse_one(parts[0]), stop = parse_one(parts[1]), step = parse_one(parts[2]);
        if (!(step > 0) || stop < start) throw UsageError(std::string(what) + " range needs step > 0 and stop >= start");
        const auto count = static_cast<long>(std::floor((stop - start) / static_cast<double>(step) + 1e-9)) + 1;
        for (long i = 0; i < count; ++i) out.push_back(static_cast<T>(start + i * step));
    } else {
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_one(p));
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
    return out;
}

std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Options {
    std::string medium = "vacuum";
    std::optional<double> kp_a;
    std::optional<double> ratio;
    std::optional<double> R_over_a;
    int n = 0;
    std::string n_list;
    double kmin = 0.01, kmax = 20.0;
    int samples = 2000;
    bool log_grid = false;
    std::string output = "-";
    std::string format = "csv";
    bool no_meta = false;
    int threads = 0;
    std::string method = "shift";
    std::string source = "asymptotic";
    std::string csv_path;
    std::string input;
    double fit_nmin = 0.0, fit_nmax = 0.0;
    std::string ratios;
    int n_min = 40, n_max = 320, n_count = 40;
    double r_min = 15.0, r_max = 260.0;
    int r_count = 40;
};

std::string medium_text(const Options& o)
{
    if (o.kp_a) {
        if (o.medium != "vacuum" && o.medium != "drude") {
            throw UsageError("--kp-a only applies to a Drude medium, got --medium " + o.medium);
        }
        return "drude:kp=" + number(*o.kp_a);
    }
    return o.medium;
}

MediumPtr make_medium(const Options& o)
{
    catkit_medium* m = nullptr;
    const catkit_status s = catkit_medium_parse(medium_text(o).c_str(), &m);
    if (s != CATKIT_OK) throw UsageError(catkit_last_error());
    return MediumPtr(m);
}

std::string describe(const catkit_medium* m)
{
    char buf[128];
    check(catkit_medium_describe(m, buf, sizeof buf, nullptr), "medium");
    return buf;
}

double kp_of(const std::string& medium)
{
    const auto pos = medium.find("kp=");
    return pos == std::string::npos ? 0.0 : std::stod(medium.substr(pos + 3));
}

catkit_method method_of(const Options& o)
{
    if (o.method == "shift") return CATKIT_METHOD_SHIFT;
    if (o.method == "exact") return CATKIT_METHOD_EXACT;
    throw UsageError("--method must be shift or exact");
}

catkit_source source_of(const Options& o)
{
    if (o.source == "asymptotic") return CATKIT_SOURCE_ASYMPTOTIC;
    if (o.source == "quadrature") return CATKIT_SOURCE_QUADRATURE;
    throw UsageError("--source must be asymptotic or quadrature");
}

// R / a from exactly one of --ratio and --R-over-a.
double cavity_radius(const Options& o, int n)
{
    if (o.ratio.has_value() == o.R_over_a.has_value()) throw UsageError("give exactly one of --ratio and --R-over-a");
    if (o.ratio) {
        if (!(*o.ratio > 0.0)) throw UsageError("--ratio must be > 0");
        return n / *o.ratio;
    }
    return *o.R_over_a;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> integer_columns;
};

Table from_c(const catkit_table* t, std::vector<std::string> integer_columns = {})
{
    Table out;
    const size_t cols = catkit_table_cols(t), rows = catkit_table_rows(t);
    for (size_t c = 0; c < cols; ++c) out.columns.emplace_back(catkit_table_column(t, c));
    const double* d = catkit_table_data(t);
    for (size_t r = 0; r < rows; ++r) out.rows.emplace_back(d + r * cols, d + (r + 1) * cols);
    out.integer_columns = std::move(integer_columns);
    return out;
}

class Writer {
public:
    explicit Writer(const std::string& path)
    {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw LibraryError(CATKIT_E_IO, "cannot open output file " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void finish(const std::string& path)
    {
        out().flush();
        if (!out()) throw LibraryError(CATKIT_E_IO, "failed writing " + (path == "-" ? std::string("stdout") : path));
    }

private:
    std::ofstream file_;
};

std::vector<std::pair<std::string, std::string>> base_meta(const std::string& command, const Options& o)
{
    std::vector<std::pair<std::string, std::string>> meta{{"catkit", catkit_version()}, {"command", command}};
    if (!o.no_meta) meta.emplace_back("generated", utc_timestamp());
    return meta;
}

void emit(const Table& t, const std::vector<std::pair<std::string, std::string>>& meta, const Options& o)
{
    Writer w(o.output);
    std::ostream& os = w.out();
    const auto is_int = [&](std::size_t c) {
        return std::find(t.integer_columns.begin(), t.integer_columns.end(), t.columns[c]) != t.integer_columns.end();
    };
    if (o.format == "json") {
        json doc;
        json m = json::object();
        for (const auto& [k, v] : meta) m[k] = v;
        doc["meta"] = m;
        doc["columns"] = t.columns;
        json rows = json::array();
        for (const auto& row : t.rows) {
            json r = json::array();
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (is_int(c)) {
                    r.push_back(static_cast<long long>(row[c]));
                } else {
                    r.push_back(row[c]);
                }
            }
            rows.push_back(r);
        }
        doc["rows"] = rows;
        os << doc.dump(2) << '\n';
    } else {
        for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
        for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                os << (c ? "," : "");
                if (is_int(c)) {
                    os << static_cast<long long>(row[c]);
                } else {
                    os << number(row[c]);
                }
            }
            os << '\n';
        }
    }
    w.finish(o.output);
}

void add_medium_meta(std::vector<std::pair<std::string, std::string>>& meta, const catkit_medium* m)
{
    const std::string text = describe(m);
    meta.emplace_back("medium", text);
    if (const double kp = kp_of(text); kp > 0.0) meta.emplace_back("kp_a", number(kp));
}

int cmd_phase_shift(const Options& o)
{
    const MediumPtr m = make_medium(o);
    if (o.samples < 2) throw UsageError("--samples must be >= 2");
    if (!(o.kmin > 0.0) || !(o.kmax > o.kmin)) throw UsageError("need 0 < --kmin < --kmax");
    std::vector<double> k(static_cast<std::size_t>(o.samples));
    for (int i = 0; i < o.samples; ++i) {
        const double t = static_cast<double>(i) / (o.samples - 1);
        k[static_cast<std::size_t>(i)] =
            o.log_grid ? o.kmin * std::pow(o.kmax / o.kmin, t) : o.kmin + t * (o.kmax - o.kmin);
    }
    std::vector<double> delta(k.size());
    check(catkit_phase_shift_unwrapped(m.get(), 1, 1.0, k.data(), k.size(), delta.data()), "phase-shift");
    Table t{{"k_a", "delta"}, {}, {}};
    for (std::size_t i = 0; i < k.size(); ++i) t.rows.push_back({k[i], delta[i]});
    auto meta = base_meta("phase-shift", o);
    add_medium_meta(meta, m.get());
    emit(t, meta, o);
    return 0;
}

SpectrumPtr spectrum_for(const Options& o, const catkit_medium* m, double R)
{
    if (o.n < 1) throw UsageError("--n must be >= 1");
    catkit_spectrum* s = nullptr;
    check(catkit_spectrum_build(m, R, o.n, method_of(o), &s),
          "spectrum (N = " + std::to_string(o.n) + ", R/a = " + number(R) + ")");
    return SpectrumPtr(s);
}

int cmd_spectrum(const Options& o)
{
    const MediumPtr m = make_medium(o);
    const double R = cavity_radius(o, o.n);
    const SpectrumPtr s = spectrum_for(o, m.get(), R);
    const size_t n = catkit_spectrum_size(s.get());
    std::vector<double> q(n), k(n), d(n);
    check(catkit_spectrum_data(s.get(), q.data(), k.data(), d.data()), "spectrum");
    Table t{{"s", "q_a", "k_a", "delta"}, {}, {"s"}};
    for (size_t i = 0; i < n; ++i) t.rows.push_back({static_cast<double>(i + 1), q[i], k[i], d[i]});
    auto meta = base_meta("spectrum", o);
    add_medium_meta(meta, m.get());
    meta.emplace_back("R_over_a", number(R));
    meta.emplace_back("method", o.method);
    emit(t, meta, o);
    return 0;
}

int cmd_overlap(const Options& o)
{
    if (o.output == "-") throw UsageError("overlap writes a binary matrix; give -o <path>");
    const MediumPtr m = make_medium(o);
    const double R = cavity_radius(o, o.n);
    const SpectrumPtr s = spectrum_for(o, m.get(), R);
    catkit_overlap* raw = nullptr;
    check(catkit_overlap_build(s.get(), source_of(o), &raw), "overlap (N = " + std::to_string(o.n) + ")");
    const OverlapPtr ov(raw);
    const size_t n = catkit_overlap_size(ov.get());
    std::vector<double> D(n * n);
    check(catkit_overlap_matrix(ov.get(), D.data()), "overlap");
    catkit_overlap_result r{};
    check(catkit_overlap_result_get(ov.get(), &r), "overlap");

    {
        std::ofstream bin(o.output, std::ios::binary);
        if (!bin) throw LibraryError(CATKIT_E_IO, "cannot open " + o.output);
        for (const double v : D) {
            unsigned char bytes[8];
            std::uint64_t bits = 0;
            std::memcpy(&bits, &v, 8);
            for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
            bin.write(reinterpret_cast<const char*>(bytes), 8);
        }
        if (!bin) throw LibraryError(CATKIT_E_IO, "failed writing " + o.output);
    }

    const std::string medium = describe(m.get());
    json side;
    side["n"] = n;
    side["medium"] = medium;
    side["kp_a"] = kp_of(medium);
    side["ratio_or_R"] = o.ratio ? json{{"ratio", *o.ratio}} : json{{"R_over_a", R}};
    side["R_over_a"] = R;
    side["source"] = o.source;
    side["method"] = o.method;
    side["layout"] = "row-major float64 little-endian; rows are empty-cavity modes";
    side["log_abs_det"] = r.log_abs_det_D;
    side["sign"] = r.sign_det;
    side["log_S"] = r.log_S;
    {
        std::ofstream js(o.output + ".json");
        js << side.dump(2) << '\n';
        if (!js) throw LibraryError(CATKIT_E_IO, "failed writing " + o.output + ".json");
    }

    if (!o.csv_path.empty()) {
        std::ofstream csv(o.csv_path);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) csv << (j ? "," : "") << number(D[i * n + j]);
            csv << '\n';
        }
        if (!csv) throw LibraryError(CATKIT_E_IO, "failed writing " + o.csv_path);
    }
    std::cout << "log_abs_det_D=" << number(r.log_abs_det_D) << " sign=" << r.sign_det << " log_S=" << number(r.log_S)
              << '\n';
    return 0;
}

int cmd_scan(const Options& o)
{
    if (!o.ratio || o.R_over_a) throw UsageError("scan needs --ratio (R is derived from N)");
    if (o.n_list.empty()) throw UsageError("scan needs --n-list");
    const MediumPtr m = make_medium(o);
    const std::vector<int> N = parse_list<int>(o.n_list, "--n-list");
    catkit_table* raw = nullptr;
    check(catkit_scan_fixed_ratio(m.get(), *o.ratio, N.data(), N.size(), method_of(o), source_of(o), &raw),
          "scan (ratio = " + number(*o.ratio) + ")");
    const TablePtr t(raw);
    auto meta = base_meta("scan", o);
    add_medium_meta(meta, m.get());
    meta.emplace_back("ratio", number(*o.ratio));
    meta.emplace_back("method", o.method);
    meta.emplace_back("source", o.source);
    emit(from_c(t.get(), {"N"}), meta, o);
    return 0;
}

Table read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    Table t;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (t.columns.empty()) {
            t.columns = fields;
            continue;
        }
        if (fields.size() != t.columns.size()) throw UsageError("ragged row in " + path);
        std::vector<double> row;
        for (const auto& f : fields) row.push_back(std::stod(f));
        t.rows.push_back(row);
    }
    if (t.columns.empty()) throw UsageError("no header in " + path);
    return t;
}

int cmd_fit(const Options& o)
{
    if (o.input.empty()) throw UsageError("fit needs --in <scan.csv>");
    const Table scan = read_csv(o.input);
    const auto col = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t c = 0; c < scan.columns.size(); ++c) {
            if (scan.columns[c] == name) return c;
        }
        return std::nullopt;
    };
    const auto iN = col("N");
    if (!iN) throw UsageError(o.input + " has no N column");

    std::vector<double> row;
    Table t{{}, {}, {"n_points"}};
    const auto fit_column = [&](const std::string& name, const std::string& label, double factor) {
        const auto ic = col(name);
        if (!ic) return;
        std::vector<double> N, v;
        for (const auto& r : scan.rows) {
            const double n = r[*iN];
            if (o.fit_nmin > 0.0 && n < o.fit_nmin) continue;
            if (o.fit_nmax > 0.0 && n > o.fit_nmax) continue;
            N.push_back(n);
            v.push_back(factor * r[*ic]);
        }
        catkit_fit f{};
        check(catkit_fit_power_law(N.data(), v.data(), N.size(), &f), "fit of " + name);
        if (row.empty()) {
            t.columns = {"n_points", "N_min", "N_max"};
            row = {static_cast<double>(f.n_points), f.n_min, f.n_max};
        }
        t.columns.push_back("eta_" + label);
        t.columns.push_back("stderr_" + label);
        row.push_back(f.eta);
        row.push_back(f.stderr_eta);
    };
    fit_column("log_abs_det_D", "det", 1.0);
    fit_column("log_S", "S2", 2.0);
    if (row.empty()) throw UsageError(o.input + " has neither log_abs_det_D nor log_S");
    t.rows.push_back(row);

    auto meta = base_meta("fit", o);
    meta.emplace_back("input", o.input);
    emit(t, meta, o);
    return 0;
}

std::vector<int> linspace_int(int lo, int hi, int count)
{
    std::vector<int> v;
    for (int i = 0; i < count; ++i) {
        const int x = count == 1 ? lo : static_cast<int>(std::lround(lo + (hi - lo) * static_cast<double>(i) / (count - 1)));
        if (v.empty() || x > v.back()) v.push_back(x);
    }
    return v;
}

std::vector<double> linspace(double lo, double hi, int count)
{
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    return v;
}

int cmd_contour(const Options& o)
{
    if (o.n_count < 1 || o.r_count < 1) throw UsageError("grid counts must be >= 1");
    const MediumPtr m = make_medium(o);
    const std::vector<int> N = linspace_int(o.n_min, o.n_max, o.n_count);
    const std::vector<double> R = linspace(o.r_min, o.r_max, o.r_count);
    catkit_table* raw = nullptr;
    check(catkit_contour_scan(m.get(), N.data(), N.size(), R.data(), R.size(), &raw), "contour");
    const TablePtr t(raw);
    auto meta = base_meta("contour", o);
    add_medium_meta(meta, m.get());
    double ridge = 0.0;
    int lines = 0;
    if (catkit_contour_ridge(t.get(), &ridge, &lines) == CATKIT_OK) {
        meta.emplace_back("ridge_ratio", number(ridge));
        meta.emplace_back("ridge_lines", std::to_string(lines));
    }
    emit(from_c(t.get(), {"N"}), meta, o);
    return 0;
}

int cmd_eta_vs_delta(const Options& o)
{
    if (o.ratios.empty() || o.n_list.empty()) throw UsageError("eta-vs-delta needs --ratios and --n-list");
    const MediumPtr m = make_medium(o);
    const std::vector<double> ratios = parse_list<double>(o.ratios, "--ratios");
    const std::vector<int> N = parse_list<int>(o.n_list, "--n-list");
    catkit_table* raw = nullptr;
    check(catkit_eta_vs_delta(m.get(), ratios.data(), ratios.size(), N.data(), N.size(), &raw), "eta-vs-delta");
    const TablePtr t(raw);
    auto meta = base_meta("eta-vs-delta", o);
    add_medium_meta(meta, m.get());
    meta.emplace_back("n_list", o.n_list);
    emit(from_c(t.get()), meta, o);
    return 0;
}

int cmd_pc_check(const Options& o)
{
    if (o.ratios.empty()) throw UsageError("pc-check needs --ratios");
    const int n = o.n > 0 ? o.n : 500;
    Table t{{"ratio", "N", "computed_log_S", "closed_form_log_S"}, {}, {"N"}};
    for (const double r : parse_list<double>(o.ratios, "--ratios")) {
        double computed = 0.0, closed = 0.0;
        check(catkit_pc_check(r, n, &computed, &closed), "pc-check (ratio = " + number(r) + ", N = " + std::to_string(n) + ")");
        t.rows.push_back({r, static_cast<double>(n), computed, closed});
    }
    auto meta = base_meta("pc-check", o);
    meta.emplace_back("medium", "pec");
    emit(t, meta, o);
    return 0;
}

int cmd_selftest(const Options&)
{
    int failures = 0;
    check(catkit_selftest(
              [](void*, const char* name, int passed, const char* detail) {
                  std::printf("%s %s: %s\n", passed ? "PASS" : "FAIL", name, detail);
              },
              nullptr, &failures),
          "selftest");
    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"catkit: cavity photon orthogonality catastrophe toolkit"};
    app.require_subcommand(1);
    Options o;

    const auto add_common = [&](CLI::App* c) {
        c->add_option("--medium", o.medium, "vacuum | drude:kp=<kp a> | dielectric:eps=<eps> | pec");
        c->add_option("--kp-a", o.kp_a, "Drude plasma wavevector times a (shorthand for drude:kp=)");
        c->add_option("-o,--output", o.output, "output path, - for stdout");
        c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        c->add_flag("--no-meta", o.no_meta, "omit the timestamp line");
        c->add_option("--threads", o.threads, "worker threads (overrides CATKIT_THREADS)");
    };
    const auto add_geometry = [&](CLI::App* c) {
        c->add_option("--n", o.n, "number of modes")->required();
        c->add_option("--ratio", o.ratio, "N a / R");
        c->add_option("--R-over-a", o.R_over_a, "cavity radius in units of a");
        c->add_option("--method", o.method, "shift or exact");
    };

    auto* ps = app.add_subcommand("phase-shift", "unwrapped l = 1 phase shift over a k grid");
    add_common(ps);
    ps->add_option("--kmin", o.kmin, "smallest k a");
    ps->add_option("--kmax", o.kmax, "largest k a");
    ps->add_option("--samples", o.samples, "grid points");
    ps->add_flag("--log", o.log_grid, "logarithmic grid");

    auto* sp = app.add_subcommand("spectrum", "empty and loaded cavity wavevectors");
    add_common(sp);
    add_geometry(sp);

    auto* ov = app.add_subcommand("overlap", "overlap matrix D, binary + JSON sidecar");
    add_common(ov);
    add_geometry(ov);
    ov->add_option("--source", o.source, "asymptotic or quadrature");
    ov->add_option("--csv", o.csv_path, "also write D as CSV");

    auto* sc = app.add_subcommand("scan", "log|det D| and log S along N a / R = ratio");
    add_common(sc);
    sc->add_option("--ratio", o.ratio, "N a / R")->required();
    sc->add_option("--n-list", o.n_list, "start:stop:step or comma list")->required();
    sc->add_option("--method", o.method, "shift or exact");
    sc->add_option("--source", o.source, "asymptotic or quadrature");

    auto* fit = app.add_subcommand("fit", "power-law exponents from a scan CSV");
    add_common(fit);
    fit->add_option("--in", o.input, "scan CSV")->required();
    fit->add_option("--nmin", o.fit_nmin, "smallest N in the fit window");
    fit->add_option("--nmax", o.fit_nmax, "largest N in the fit window");

    auto* ct = app.add_subcommand("contour", "log|det D| over an (N, R/a) grid");
    add_common(ct);
    ct->add_option("--n-min", o.n_min, "smallest N");
    ct->add_option("--n-max", o.n_max, "largest N");
    ct->add_option("--n-count", o.n_count, "N grid points (<= 200)");
    ct->add_option("--r-min", o.r_min, "smallest R / a (>= 10)");
    ct->add_option("--r-max", o.r_max, "largest R / a");
    ct->add_option("--r-count", o.r_count, "R grid points (<= 200)");

    auto* ed = app.add_subcommand("eta-vs-delta", "exponent against the phase shift at k = pi ratio / a");
    add_common(ed);
    ed->add_option("--ratios", o.ratios, "start:stop:step or comma list")->required();
    ed->add_option("--n-list", o.n_list, "start:stop:step or comma list")->required();

    auto* pc = app.add_subcommand("pc-check", "perfect-conductor ln S against -ratio^2 ln(pi/2)");
    add_common(pc);
    pc->add_option("--ratios", o.ratios, "start:stop:step or comma list")->required();
    pc->add_option("--n", o.n, "number of modes (default 500)");

    auto* st = app.add_subcommand("selftest", "run the oracle suite");
    add_common(st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (o.threads != 0) check(catkit_set_threads(o.threads), "--threads");
        if (*ps) return cmd_phase_shift(o);
        if (*sp) return cmd_spectrum(o);
        if (*ov) return cmd_overlap(o);
        if (*sc) return cmd_scan(o);
        if (*fit) return cmd_fit(o);
        if (*ct) return cmd_contour(o);
        if (*ed) return cmd_eta_vs_delta(o);
        if (*pc) return cmd_pc_check(o);
        if (*st) return cmd_selftest(o);
    } catch (const UsageError& e) {
        std::cerr << "catkit: " << e.what() << '\n';
        return kExitUsage;
    } catch (const LibraryError& e) {
        std::cerr << "catkit: " << e.what() << '\n';
        return e.status == CATKIT_E_INVALID_ARGUMENT ? kExitUsage : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "catkit: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
