#include "salpeter/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "salpeter/errors.hpp"
#include "salpeter/parallel.hpp"
#include "salpeter/principal.hpp"
#include "salpeter/rgflow.hpp"
#include "salpeter/scatter.hpp"
#include "salpeter/spectrum.hpp"

namespace salpeter::cli {

namespace {

// input problems map to exit code 2
struct InputError : Error {
    using Error::Error;
};

// a grid row failed; carries which one
struct RowError : Error {
    using Error::Error;
};

std::vector<double> read_number_array(const nlohmann::json& doc, const char* field) {
    if (!doc.contains(field)) throw ValidationError(field, "missing");
    const auto& arr = doc.at(field);
    if (!arr.is_array()) throw ValidationError(field, "must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number())
            throw ValidationError(std::string(field) + "[" + std::to_string(i) + "]", "must be a number");
        out.push_back(arr[i].get<double>());
    }
    return out;
}

std::string suffix(const ModelConfig& cfg) { return cfg.massless() ? "EB" : "m"; }

struct Common {
    std::string config;
    std::string grid;
    std::string out;
    int threads = 1;
    int precision = 12;
};

std::vector<double> required_grid(const Common& c, bool logarithmic = false) {
    if (c.grid.empty()) throw InputError("--grid start:stop:count is required for this command");
    return grid_values(parse_grid(c.grid), logarithmic);
}

// Evaluates rows in parallel; row i is produced by make(i). Failures name the row.
Table run_rows(std::vector<std::string> header, const std::vector<double>& grid, int threads,
               const std::function<std::vector<std::string>(std::size_t)>& make) {
    Table t;
    t.header = std::move(header);
    t.rows.resize(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        try {
            t.rows[i] = make(i);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "row " << i << " (grid value " << format_number(grid[i], 17) << "): " << e.what();
            throw RowError(msg.str());
        }
    });
    return t;
}

// Opens the destination up front so that an unwritable path is an input error.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
            if (!*file_) throw InputError("cannot open output file: " + path);
            os_ = file_.get();
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

void finish(const Table& t, const std::string& path, std::ostream& out, Sink& sink) {
    write_table(t, sink.stream());
    sink.stream().flush();
    if (!sink.stream()) throw InputError("failed writing output " + (path.empty() ? "stream" : path));
    (void)out;
}

std::vector<int> parse_counts(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = 0;
        const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
        if (r.ec != std::errc() || r.ptr != item.data() + item.size() || v < 1)
            throw InputError("--counts expects a comma-separated list of positive integers");
        out.push_back(v);
    }
    if (out.empty()) throw InputError("--counts must not be empty");
    return out;
}

std::pair<double, double> parse_window(const std::string& s) {
    const auto pos = s.find(':');
    if (pos == std::string::npos) throw InputError("--window expects lo:hi");
    try {
        const double lo = std::stod(s.substr(0, pos));
        const double hi = std::stod(s.substr(pos + 1));
        if (!(hi > lo)) throw InputError("--window needs lo < hi");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw InputError("--window expects lo:hi");
    }
}

}  // namespace

ModelConfig parse_config_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("<document>", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("<document>", "must be a JSON object");
    ModelConfig cfg;
    if (!doc.contains("mass")) throw ValidationError("mass", "missing");
    if (!doc.at("mass").is_number()) throw ValidationError("mass", "must be a number");
    cfg.mass = doc.at("mass").get<double>();
    cfg.centers = read_number_array(doc, "centers");
    cfg.bindings = read_number_array(doc, "bindings");
    cfg.validate();
    return cfg;
}

ModelConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

Grid parse_grid(const std::string& spec) {
    const auto p1 = spec.find(':');
    const auto p2 = p1 == std::string::npos ? p1 : spec.find(':', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw InputError("grid must be start:stop:count, got '" + spec + "'");
    Grid g;
    try {
        std::size_t used = 0;
        const std::string a = spec.substr(0, p1), b = spec.substr(p1 + 1, p2 - p1 - 1), c = spec.substr(p2 + 1);
        g.start = std::stod(a, &used);
        if (used != a.size()) throw InputError("bad grid start");
        g.stop = std::stod(b, &used);
        if (used != b.size()) throw InputError("bad grid stop");
        g.count = std::stoi(c, &used);
        if (used != c.size()) throw InputError("bad grid count");
    } catch (const std::logic_error&) {
        throw InputError("grid must be start:stop:count, got '" + spec + "'");
    }
    if (g.count < 0) throw InputError("grid count must be >= 0");
    if (!std::isfinite(g.start) || !std::isfinite(g.stop)) throw InputError("grid bounds must be finite");
    if (g.count >= 2 && !(g.stop > g.start)) throw InputError("grid must be strictly increasing");
    return g;
}

std::vector<double> grid_values(const Grid& g, bool logarithmic) {
    std::vector<double> v;
    if (g.count == 0) return v;
    if (logarithmic && !(g.start > 0.0)) throw InputError("logarithmic grid needs positive bounds");
    if (g.count == 1) return {g.start};
    for (int i = 0; i < g.count; ++i) {
        const double f = double(i) / (g.count - 1);
        if (logarithmic)
            v.push_back(i == g.count - 1 ? g.stop : g.start * std::pow(g.stop / g.start, f));
        else
            v.push_back(i == g.count - 1 ? g.stop : g.start + f * (g.stop - g.start));
    }
    return v;
}

std::string format_number(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    return std::string(buf, r.ptr);
}

void write_table(const Table& t, std::ostream& os) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

void emit_table(const Table& t, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot open output file: " + path);
    write_table(t, f);
    if (!f) throw InputError("failed writing " + path);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound states, scattering and RG flow for semirelativistic point interactions"};
    app.require_subcommand(1);
    Common c;

    auto add_common = [&](CLI::App* sub, bool grid_opt = true) {
        sub->add_option("--config", c.config, "JSON model configuration")->required();
        if (grid_opt) sub->add_option("--grid", c.grid, "start:stop:count");
        sub->add_option("--out", c.out, "output CSV (stdout when omitted)");
        sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 256));
        sub->add_option("--precision", c.precision, "significant digits")->check(CLI::Range(6, 17));
    };

    bool phi_scatter = false;
    auto* phi = app.add_subcommand("phi", "principal matrix entries along an energy or momentum grid");
    add_common(phi);
    phi->add_flag("--scatter", phi_scatter, "grid is k (outgoing waves) instead of real E");

    auto* bound = app.add_subcommand("bound", "bound states; with --grid, twin-pair counts versus separation");
    add_common(bound);

    int state_index = 0;
    auto* wave = app.add_subcommand("wavefunction", "normalized bound-state wave function on an x grid");
    add_common(wave);
    wave->add_option("--state", state_index, "bound state index, 0 = ground")->check(CLI::NonNegativeNumber);

    bool asym = false;
    auto* scat = app.add_subcommand("scatter", "reflection and transmission versus k");
    add_common(scat);
    scat->add_flag("--asymptotic", asym, "large-distance approximation for the damped term");

    auto* phase = app.add_subcommand("phase", "phase shift versus k");
    add_common(phase);

    double k_probe = 1e-3;
    auto* anomaly = app.add_subcommand("anomaly", "threshold-anomaly scan of a twin pair versus 2ma");
    add_common(anomaly);
    anomaly->add_option("--k-probe", k_probe, "probe momentum k/m")->check(CLI::PositiveNumber);
    anomaly->add_flag("--asymptotic", asym, "large-distance approximation for the damped term");

    std::string counts = "1,2,4,8", window;
    double spacing = 2.0;
    auto* kp = app.add_subcommand("kp", "equally spaced chains: transmission tables and gap summary");
    add_common(kp);
    kp->add_option("--counts", counts, "comma-separated chain lengths");
    kp->add_option("--spacing", spacing, "m times the lattice spacing")->check(CLI::PositiveNumber);
    kp->add_option("--window", window, "k/m window lo:hi for the gap metric")->required();

    bool log_grid = false;
    auto* rgc = app.add_subcommand("rg", "running coupling and beta function versus M");
    add_common(rgc);
    rgc->add_flag("--log", log_grid, "logarithmic grid spacing");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const ModelConfig cfg = parse_config(c.config);
        const double s = cfg.scale();
        const int P = c.precision;
        auto fmt = [P](double v) { return format_number(v, P); };
        const std::string sx = suffix(cfg);

        if (*phi) {
            const auto grid = required_grid(c);
            Sink sink(c.out, out);
            const std::size_t n = cfg.size();
            std::vector<std::string> header{phi_scatter ? "k_over_" + sx : "E_over_" + sx};
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const std::string ij = std::to_string(i + 1) + "_" + std::to_string(j + 1);
                    if (phi_scatter) {
                        header.push_back("re_phi_" + ij);
                        header.push_back("im_phi_" + ij);
                    } else {
                        header.push_back("phi_" + ij);
                    }
                }
            const Table t = run_rows(header, grid, c.threads, [&](std::size_t r) {
                std::vector<std::string> row{fmt(grid[r])};
                if (phi_scatter) {
                    const double k = grid[r] * s;
                    const auto m = cfg.massless() ? principal::phi_massless_scatter(cfg, k)
                                                  : principal::phi_scatter(cfg, k);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) {
                            row.push_back(fmt(m.entries(i, j).real()));
                            row.push_back(fmt(m.entries(i, j).imag()));
                        }
                } else {
                    const Eigen::MatrixXd m = principal::phi_real(cfg, grid[r] * s);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) row.push_back(fmt(m(i, j)));
                }
                return row;
            });
            finish(t, c.out, out, sink);
        } else if (*bound) {
            if (!c.grid.empty()) {
                if (cfg.size() != 2) throw InputError("bound --grid scans a twin pair; config needs two centers");
                const auto grid = required_grid(c);
                Sink sink(c.out, out);
                const std::string col = cfg.massless() ? "a_EB" : "two_m_a";
                const double eb = cfg.bindings.front();
                const Table t = run_rows({col, "count", "E1_over_" + sx, "E2_over_" + sx}, grid, c.threads,
                                         [&](std::size_t r) {
                                             // massless axis is a|E_B| with separation 2a
                                             const double sep = cfg.massless() ? 2.0 * grid[r] / s : grid[r] / s;
                                             const auto twin = scatter::twin_config(cfg.mass, sep, eb);
                                             const auto st = spectrum::find_bound_states(twin);
                                             std::vector<std::string> row{fmt(grid[r]), std::to_string(st.size())};
                                             for (std::size_t k = 0; k < 2; ++k)
                                                 row.push_back(k < st.size() ? fmt(st[k].energy / s) : "");
                                             return row;
                                         });
                finish(t, c.out, out, sink);
            } else {
                Sink sink(c.out, out);
                const auto states = spectrum::find_bound_states(cfg);
                Table t;
                t.header = {"state", "E_over_" + sx, "class", "threshold", "slope_times_" + sx};
                for (std::size_t i = 0; i < states.size(); ++i)
                    t.rows.push_back({std::to_string(i), fmt(states[i].energy / s), to_string(states[i].cls),
                                      states[i].threshold ? "yes" : "no", fmt(states[i].slope * s)});
                finish(t, c.out, out, sink);
                out << "# gershgorin_lower_bound_over_" << sx << "=" << fmt(spectrum::gershgorin_lower_bound(cfg) / s)
                    << " count=" << states.size() << "\n";
            }
        } else if (*wave) {
            const auto grid = required_grid(c);
            Sink sink(c.out, out);
            auto states = spectrum::find_bound_states(cfg);
            if (std::size_t(state_index) >= states.size())
                throw InputError("--state " + std::to_string(state_index) + " but only " +
                                 std::to_string(states.size()) + " bound states exist");
            BoundState st = states[std::size_t(state_index)];
            spectrum::normalize_state(cfg, st);
            const Table t = run_rows({"x_times_" + sx, "psi_over_sqrt_" + sx}, grid, c.threads, [&](std::size_t r) {
                const double x = grid[r] / s;
                return std::vector<std::string>{fmt(grid[r]),
                                                fmt(spectrum::bound_wavefunction(cfg, st, x) / std::sqrt(s))};
            });
            finish(t, c.out, out, sink);
        } else if (*scat || *phase) {
            const auto grid = required_grid(c);
            Sink sink(c.out, out);
            std::vector<double> ks(grid.size());
            std::transform(grid.begin(), grid.end(), ks.begin(), [s](double v) { return v * s; });
            std::vector<ScatteringPoint> pts;
            try {
                pts = scatter::phase_shift_sweep(cfg, ks, asym ? OffDiagonal::asymptotic : OffDiagonal::exact,
                                                 c.threads);
            } catch (const DomainError& e) {
                throw InputError(e.what());
            }
            Table t;
            if (*scat) {
                t.header = {"k_over_" + sx, "R", "T", "R_plus_T"};
                for (std::size_t i = 0; i < pts.size(); ++i)
                    t.rows.push_back({fmt(grid[i]), fmt(pts[i].R), fmt(pts[i].T), fmt(pts[i].R + pts[i].T)});
            } else {
                t.header = {"k_over_" + sx, "delta", "abs_S", "R", "T"};
                for (std::size_t i = 0; i < pts.size(); ++i)
                    t.rows.push_back({fmt(grid[i]), fmt(pts[i].delta), fmt(std::abs(pts[i].r + pts[i].t)),
                                      fmt(pts[i].R), fmt(pts[i].T)});
            }
            finish(t, c.out, out, sink);
        } else if (*anomaly) {
            if (cfg.massless()) throw InputError("anomaly scan needs mass > 0");
            const auto grid = required_grid(c);
            if (grid.size() < 3) throw InputError("anomaly scan needs at least three grid points");
            Sink sink(c.out, out);
            std::vector<double> seps(grid.size());
            std::transform(grid.begin(), grid.end(), seps.begin(), [s](double v) { return v / s; });
            const auto res = scatter::anomaly_scan(cfg.mass, cfg.bindings.front(), k_probe * s, seps,
                                                   asym ? OffDiagonal::asymptotic : OffDiagonal::exact, c.threads);
            Table t;
            t.header = {"two_m_a", "R"};
            for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({fmt(grid[i]), fmt(res.reflection[i])});
            finish(t, c.out, out, sink);
            out << "# dip two_m_a=" << fmt(res.dip_location * s) << " R_min=" << fmt(res.dip_depth)
                << " present=" << (res.present ? "yes" : "no") << " critical_two_m_a="
                << (res.critical_found ? fmt(res.critical_separation * s) : std::string("none")) << "\n";
        } else if (*kp) {
            if (cfg.massless()) throw InputError("kp scan needs mass > 0");
            if (c.out.empty()) throw InputError("kp writes several files; --out <prefix> is required");
            const auto grid = required_grid(c);
            const auto ns = parse_counts(counts);
            const auto [lo, hi] = parse_window(window);
            std::vector<double> ks(grid.size());
            std::transform(grid.begin(), grid.end(), ks.begin(), [s](double v) { return v * s; });
            Table gaps;
            gaps.header = {"N", "window_lo", "window_hi", "min_T", "k_at_min", "max_flux_error"};
            for (int n : ns) {
                const std::string path = c.out + "_N" + std::to_string(n) + ".csv";
                Sink sink(path, out);
                const auto chain = scatter::chain_config(n, cfg.mass, spacing / s, cfg.bindings.front());
                const auto pts = scatter::phase_shift_sweep(chain, ks, OffDiagonal::exact, c.threads);
                Table t;
                t.header = {"k_over_m", "R", "T", "R_plus_T"};
                for (std::size_t i = 0; i < pts.size(); ++i)
                    t.rows.push_back({fmt(grid[i]), fmt(pts[i].R), fmt(pts[i].T), fmt(pts[i].R + pts[i].T)});
                finish(t, path, out, sink);
                std::vector<ScatteringPoint> scaled = pts;
                for (auto& p : scaled) p.k /= s;
                const auto g = scatter::gap_metric(n, scaled, lo, hi);
                gaps.rows.push_back({std::to_string(n), fmt(lo), fmt(hi), fmt(g.min_T), fmt(g.k_at_min),
                                     fmt(g.max_flux_error)});
            }
            const std::string gpath = c.out + "_gaps.csv";
            Sink gsink(gpath, out);
            finish(gaps, gpath, out, gsink);
        } else if (*rgc) {
            const auto grid = required_grid(c, log_grid);
            for (double v : grid)
                if (!(v > 0.0)) throw InputError("rg grid values (M) must be positive");
            Sink sink(c.out, out);
            const double eb = cfg.bindings.front();
            const Table t = run_rows({"M_over_" + sx, "inv_lambda_R", "lambda_R", "beta"}, grid, c.threads,
                                     [&](std::size_t r) {
                                         const double M = grid[r] * s;
                                         const double lam = cfg.massless()
                                                                ? rg::running_coupling_massless(M, eb)
                                                                : rg::running_coupling(M, eb, cfg.mass);
                                         return std::vector<std::string>{fmt(grid[r]), fmt(1.0 / lam), fmt(lam),
                                                                         fmt(rg::beta(lam))};
                                     });
            finish(t, c.out, out, sink);
        }
        return 0;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const RowError& e) {
        err << "numerical failure at " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace salpeter::cli
