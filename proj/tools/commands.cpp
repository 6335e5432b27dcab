#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <map>

#include "mrs/config.hpp"
#include "mrs/csv.hpp"
#include "mrs/evolution.hpp"
#include "mrs/metrics.hpp"
#include "mrs/quadrature.hpp"
#include "mrs/sparse_grid.hpp"

namespace mrs::cli {

namespace {

namespace fs = std::filesystem;

std::vector<double> sample_x(const ModelProblem& m, std::size_t n0, std::size_t count, bool cells) {
    std::vector<double> x(count);
    const double h = (m.hi - m.lo) / static_cast<double>(n0);
    for (std::size_t i = 0; i < count; ++i) x[i] = m.lo + (static_cast<double>(i) + (cells ? 0.5 : 0.0)) * h;
    return x;
}

std::vector<double> exact_profile(const ModelProblem& m, std::size_t n0, std::size_t count, bool cells, double t) {
    std::vector<double> u(count);
    const double h = (m.hi - m.lo) / static_cast<double>(n0);
    for (std::size_t i = 0; i < count; ++i) {
        const double xl = m.lo + static_cast<double>(i) * h;
        u[i] = cells ? gauss_legendre([&](double x) { return m.exact(x, t); }, xl, xl + h, 2) / h : m.exact(xl, t);
    }
    return u;
}

std::string path_for(const Options& opt, const std::string& name) { return (fs::path(opt.out) / name).string(); }

std::vector<std::string> metrics_header(const ModelProblem& m) {
    std::vector<std::string> h = {"t", "mu", "e1", "e2", "einf", "tv", "mass"};
    if (m.source) h.push_back("v_f");
    h.insert(h.end(), {"cpu_adaptive_s", "cpu_uniform_s", "V"});
    return h;
}

void write_significance(const Options& opt, const RunConfig& rc, const ModelProblem& m, const Snapshot& s, bool cells) {
    std::vector<CsvRow> rows;
    const double h0 = (m.hi - m.lo) / static_cast<double>(rc.solve.n0);
    for (const auto& [k, j] : s.significant_details) {
        const double x = cells ? m.lo + (static_cast<double>(j) - 0.75) * std::ldexp(h0, k)
                               : m.lo + static_cast<double>(SparseGrid::position(k, j)) * h0;
        rows.push_back({static_cast<double>(k), static_cast<double>(j), x});
    }
    write_csv_file(path_for(opt, rc.output.prefix + "_significance_" + std::to_string(s.step) + ".csv"),
                   {"level", "position", "x"}, rows);
}

// Replaces the timings of both runs by the median over three repetitions.
template <class Uni, class Ada>
void median_timing(SolveResult& uni, SolveResult& ada, Uni&& again_uni, Ada&& again_ada) {
    std::vector<SolveResult> u, a;
    for (int rep = 0; rep < 2; ++rep) {
        u.push_back(again_uni());
        a.push_back(again_ada());
    }
    auto median = [](double x, double y, double z) { return std::max(std::min(x, y), std::min(std::max(x, y), z)); };
    auto apply = [&](SolveResult& r, const std::vector<SolveResult>& more) {
        r.cpu_s = median(r.cpu_s, more[0].cpu_s, more[1].cpu_s);
        for (std::size_t i = 0; i < r.snapshots.size(); ++i)
            r.snapshots[i].cpu_s =
                median(r.snapshots[i].cpu_s, more[0].snapshots[i].cpu_s, more[1].snapshots[i].cpu_s);
    };
    apply(uni, u);
    apply(ada, a);
}

// Samples from the last column of a CSV file (optional header); a first
// column is kept as x when there are two or more.
void read_samples(const std::string& path, std::vector<double>& x, std::vector<double>& u) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read input '" + path + "'");
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        std::vector<double> vals;
        try {
            for (const auto& f : fields) {
                std::size_t used = 0;
                vals.push_back(std::stod(f, &used));
                if (f.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(f);
            }
        } catch (const std::exception&) {
            if (first) {
                first = false;
                continue;
            }
            throw ConfigError("input '" + path + "': non-numeric field in line '" + line + "'");
        }
        first = false;
        if (vals.size() >= 2) x.push_back(vals.front());
        u.push_back(vals.back());
    }
    if (!x.empty() && x.size() != u.size()) x.clear();
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InstabilityError& e) {
        err << "instability: " << e.what() << " (t=" << e.time() << ")\n";
        return kInstability;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

void ensure_out_dir(const Options& opt) {
    std::error_code ec;
    fs::create_directories(opt.out, ec);
    if (ec) throw ConfigError("cannot create output directory '" + opt.out + "'");
}

}  // namespace

int list_models(std::ostream& out) {
    for (const auto& info : model_catalog()) {
        out << info.name << "  " << info.summary;
        if (!info.params.empty()) {
            out << "  [params:";
            for (const auto& p : info.params) out << ' ' << p;
            out << ']';
        }
        out << '\n';
    }
    return kOk;
}

int run(const Options& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig rc = load_config(opt.config);
        ensure_out_dir(opt);
        const ModelProblem m = make_model(rc.model, rc.params);
        const bool cells = data_kind(m) == DataKind::CellAverage;
        const auto u0 = initial_data(m, rc.solve.n0);
        const double h0 = (m.hi - m.lo) / static_cast<double>(rc.solve.n0);
        std::vector<CsvRow> rows;
        SnapshotSink sink = [&](const Snapshot& s) {
            CsvRow row = {s.t, opt.uniform ? std::optional<double>{} : std::optional<double>{s.mu}};
            if (m.exact) {
                const auto ex = exact_profile(m, rc.solve.n0, s.u.size(), cells, s.t);
                const ErrorNorms e = error_norms(s.u, ex);
                row.insert(row.end(), {e.e1, e.e2, e.einf});
            } else {
                row.insert(row.end(), {std::nullopt, std::nullopt, std::nullopt});
            }
            row.insert(row.end(), {total_variation(s.u, m.periodic()), mass(s.u, h0)});
            if (m.source) row.push_back(flame_speed(s.u, h0, m));
            if (opt.uniform)
                row.insert(row.end(), {std::nullopt, s.cpu_s, std::nullopt});
            else
                row.insert(row.end(), {s.cpu_s, std::nullopt, std::nullopt});
            rows.push_back(row);
            if (rc.output.profiles) {
                const auto x = sample_x(m, rc.solve.n0, s.u.size(), cells);
                std::vector<CsvRow> prof;
                for (std::size_t i = 0; i < s.u.size(); ++i) prof.push_back({x[i], s.u[i]});
                write_csv_file(path_for(opt, rc.output.prefix + "_profile_" + std::to_string(s.step) + ".csv"),
                               {"x", "u"}, prof);
            }
            if (rc.output.significance_map && !opt.uniform) write_significance(opt, rc, m, s, cells);
            if (!opt.quiet) out << "step " << s.step << "  t=" << s.t << "  mu=" << s.mu << '\n';
        };
        const SolveResult res =
            opt.uniform ? solve_uniform(u0, m, rc.solve, sink) : solve_adaptive(u0, m, rc.solve, sink);
        write_csv_file(path_for(opt, rc.output.prefix + "_metrics.csv"), metrics_header(m), rows);
        if (!opt.quiet)
            out << "done: " << res.steps << " steps, dt=" << res.dt << ", flux evaluations " << res.flux_evals
                << ", cpu " << res.cpu_s << " s\n";
        return static_cast<int>(kOk);
    });
}

int compare(const Options& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig rc = load_config(opt.config);
        ensure_out_dir(opt);
        const ModelProblem m = make_model(rc.model, rc.params);
        const bool cells = data_kind(m) == DataKind::CellAverage;
        const auto u0 = initial_data(m, rc.solve.n0);
        const double h0 = (m.hi - m.lo) / static_cast<double>(rc.solve.n0);
        SolveResult uni = solve_uniform(u0, m, rc.solve);
        SolveResult ada = solve_adaptive(u0, m, rc.solve);
        median_timing(uni, ada, [&] { return solve_uniform(u0, m, rc.solve); },
                      [&] { return solve_adaptive(u0, m, rc.solve); });
        std::vector<CsvRow> rows;
        for (std::size_t i = 0; i < ada.snapshots.size() && i < uni.snapshots.size(); ++i) {
            const Snapshot& a = ada.snapshots[i];
            const Snapshot& u = uni.snapshots[i];
            const ErrorNorms e = error_norms(a.u, u.u);
            CsvRow row = {a.t, a.mu, e.e1, e.e2, e.einf, total_variation(a.u, m.periodic()), mass(a.u, h0)};
            if (m.source) row.push_back(flame_speed(a.u, h0, m));
            row.insert(row.end(), {a.cpu_s, u.cpu_s, speedup(u.cpu_s, a.cpu_s)});
            rows.push_back(row);
            if (rc.output.profiles) {
                const auto x = sample_x(m, rc.solve.n0, a.u.size(), cells);
                std::vector<std::string> header = {"x", "u_adaptive", "u_uniform"};
                std::vector<double> ex;
                if (m.exact) {
                    ex = exact_profile(m, rc.solve.n0, a.u.size(), cells, a.t);
                    header.push_back("u_exact");
                }
                std::vector<CsvRow> prof;
                for (std::size_t j = 0; j < a.u.size(); ++j) {
                    CsvRow r = {x[j], a.u[j], u.u[j]};
                    if (!ex.empty()) r.push_back(ex[j]);
                    prof.push_back(r);
                }
                write_csv_file(path_for(opt, rc.output.prefix + "_profile_" + std::to_string(a.step) + ".csv"),
                               header, prof);
            }
            if (rc.output.significance_map) write_significance(opt, rc, m, a, cells);
            if (!opt.quiet)
                out << "step " << a.step << "  t=" << a.t << "  mu=" << a.mu << "  einf=" << e.einf
                    << "  V=" << speedup(u.cpu_s, a.cpu_s) << '\n';
        }
        write_csv_file(path_for(opt, rc.output.prefix + "_metrics.csv"), metrics_header(m), rows);
        if (!opt.quiet)
            out << "flux evaluations: adaptive " << ada.flux_evals << ", uniform " << uni.flux_evals << '\n';
        return static_cast<int>(kOk);
    });
}

int transform(const Options& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig rc = load_config(opt.config);
        ensure_out_dir(opt);
        const ModelProblem m = make_model(rc.model, rc.params);
        const DataKind kind = data_kind(m);
        std::vector<double> x;
        std::vector<double> u0;
        if (opt.input.empty()) {
            u0 = initial_data(m, rc.solve.n0);
        } else {
            read_samples(opt.input, x, u0);
            if (u0.size() != sample_count(kind, m.periodic(), rc.solve.n0))
                throw ConfigError("input '" + opt.input + "' has " + std::to_string(u0.size()) + " samples, expected " +
                                  std::to_string(sample_count(kind, m.periodic(), rc.solve.n0)));
        }
        const Predictor P(make_coeffs(kind, rc.solve.mr_order));
        const MRRepresentation rep = encode(u0, P, rc.solve.levels, m.periodic());
        if (!opt.input.empty()) {
            const auto back = decode(truncate(rep, rc.solve.policy), P);
            std::vector<CsvRow> rec;
            for (std::size_t i = 0; i < back.size(); ++i)
                rec.push_back(x.empty() ? CsvRow{back[i]} : CsvRow{x[i], back[i]});
            write_csv_file(path_for(opt, rc.output.prefix + "_reconstruction.csv"),
                           x.empty() ? std::vector<std::string>{"u"} : std::vector<std::string>{"x", "u"}, rec);
        }
        const LevelMask mask = significance_mask(rep, rc.solve.policy);
        const auto decay = detail_decay_probe(rep);
        std::vector<CsvRow> rows;
        for (int k = 1; k <= rep.levels; ++k) {
            std::size_t count = 0;
            for (auto b : mask[static_cast<std::size_t>(k - 1)]) count += b ? 1 : 0;
            rows.push_back({static_cast<double>(k), decay[static_cast<std::size_t>(k - 1)], static_cast<double>(count),
                            rc.solve.policy.level_tol(k, rep.levels)});
        }
        write_csv_file(path_for(opt, rc.output.prefix + "_details.csv"),
                       {"level", "max_abs_detail", "significant", "tolerance"}, rows);
        Snapshot s;
        for (int k = 1; k <= rep.levels; ++k)
            for (std::size_t j = 1; j <= mask[static_cast<std::size_t>(k - 1)].size(); ++j)
                if (mask[static_cast<std::size_t>(k - 1)][j - 1]) s.significant_details.emplace_back(k, j);
        write_significance(opt, rc, m, s, kind == DataKind::CellAverage);
        const double mu = compression_ratio(rc.solve.n0, rc.solve.levels, count_mask(mask));
        if (!opt.quiet) out << "significant details: " << count_mask(mask) << "  mu=" << mu << '\n';
        return static_cast<int>(kOk);
    });
}

}  // namespace mrs::cli
