// Command-line front end: reads JSON model specs (inline or from files),
// writes CSV/JSON artifacts into the output directory, and prints a single
// JSON summary line to stdout. All randomness derives from --seed through the
// splitmix64 counter generator, so identical invocations produce
// byte-identical files regardless of --threads.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "irrlab/dimension.hpp"
#include "irrlab/errors.hpp"
#include "irrlab/interval_map.hpp"
#include "irrlab/io.hpp"
#include "irrlab/irregular.hpp"
#include "irrlab/lorenz.hpp"
#include "irrlab/rng.hpp"
#include "irrlab/skewprod.hpp"
#include "irrlab/symbolic.hpp"

namespace {

using nlohmann::json;
using namespace irrlab;

struct GlobalOptions {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 1;
    bool svg = false;
    std::string format = "csv";
};

json load_json_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw error(errc::bad_params, "cannot open " + arg);
    json j;
    in >> j;
    return j;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw error(errc::bad_params, "empty number list");
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw error(errc::bad_params, "empty integer list");
    return out;
}

std::string artifact_path(const GlobalOptions& g, const std::string& name) {
    std::filesystem::create_directories(g.out_dir);
    return (std::filesystem::path(g.out_dir) / name).string();
}

void emit(const json& summary) { std::cout << summary.dump() << "\n"; }

symbolic::SubshiftSpec spec_from_option(const std::string& spec_arg) {
    if (spec_arg.empty()) return symbolic::full_shift(2);
    return io::subshift_from_json(load_json_arg(spec_arg));
}

irregular::RoofFunction roof_from_options(const symbolic::SubshiftSpec& spec,
                                          const std::string& roof_file,
                                          const std::string& roof_constant) {
    if (!roof_file.empty()) return io::roof_from_json(load_json_arg(roof_file));
    return irregular::RoofFunction::constant(spec.alphabet_size(), io::parse_rational(roof_constant));
}

/// Deterministic chunked parallelism: results land in preallocated slots
/// indexed by chunk, so the merge is independent of scheduling.
template <typename Fn>
void run_chunks(long total, int threads, Fn&& per_chunk) {
    threads = std::max(1, threads);
    long chunk = (total + threads - 1) / std::max<long>(1, threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        long begin = t * chunk;
        long end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&per_chunk, t, begin, end] { per_chunk(t, begin, end); });
    }
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// irregular

struct IrregularArgs {
    std::string spec_arg;
    std::string p0 = "0", p1 = "1";
    std::string C = "6/5", delta = "1/100";
    int m_count = 12;
    int m0 = 2;
    int j0 = 3;
    std::string roof_file, roof_constant = "1";
};

irregular::IrregularPointProgram build_program(const symbolic::SubshiftSpec& spec,
                                               const IrregularArgs& a) {
    auto p0 = symbolic::make_periodic_point(spec, io::word_from_string(a.p0));
    auto p1 = symbolic::make_periodic_point(spec, io::word_from_string(a.p1));
    long long gap = symbolic::mixing_time(spec);
    auto schedule = irregular::build_schedule(gap, p0.period(), p1.period(),
                                              io::parse_rational(a.C), a.m_count,
                                              io::parse_rational(a.delta));
    return irregular::construct_irregular_point(spec, p0, p1, schedule);
}

int cmd_irregular_construct(const GlobalOptions& g, const IrregularArgs& a) {
    auto spec = spec_from_option(a.spec_arg);
    auto program = build_program(spec, a);
    auto path = artifact_path(g, "program.json");
    io::write_file(path, io::program_to_json(program).dump(2) + "\n");
    emit(json{{"command", "irregular-construct"},
              {"blocks", program.block_index.size()},
              {"N_final", program.schedule.N.empty() ? "0" : program.schedule.N.back().str()},
              {"program_file", "program.json"}});
    return 0;
}

int cmd_irregular_trace(const GlobalOptions& g, const IrregularArgs& a) {
    auto spec = spec_from_option(a.spec_arg);
    auto program = build_program(spec, a);
    auto p0 = program.p0;
    auto p1 = program.p1;
    auto psi = irregular::build_psi(spec, p0, p1, a.m0);
    auto roof = roof_from_options(spec, a.roof_file, a.roof_constant);
    auto report = irregular::weighted_ratio_at_checkpoints(program, psi, roof, a.j0);

    auto csv_path = artifact_path(g, "trace_checkpoints.csv");
    io::write_file(csv_path, io::report_checkpoints_csv(report));
    auto summary = io::report_summary_json(report);
    summary["command"] = "irregular-trace";
    summary["checkpoints_file"] = "trace_checkpoints.csv";
    auto sum_path = artifact_path(g, "trace_summary.json");
    io::write_file(sum_path, summary.dump(2) + "\n");
    if (g.svg) {
        std::vector<double> xs, ys;
        for (const auto& cp : report.checkpoints) {
            xs.push_back(cp.j);
            ys.push_back(to_double(cp.ratio));
        }
        io::write_file(artifact_path(g, "trace.svg"),
                       io::svg_polyline(xs, ys, "checkpoint j", "ratio", "checkpoint ratios"));
    }
    emit(summary);
    return 0;
}

// ---------------------------------------------------------------------------
// entropy

int cmd_entropy_sft(const GlobalOptions& g, const std::string& spec_arg) {
    auto spec = spec_from_option(spec_arg);
    double entropy = symbolic::sft_entropy(spec);
    json summary{{"command", "entropy-sft"},
                 {"name", spec.name()},
                 {"entropy_nats", entropy},
                 {"irreducible", spec.irreducible()},
                 {"aperiodic", spec.aperiodic()}};
    io::write_file(artifact_path(g, "entropy_sft.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

struct IntervalArgs {
    std::string family = "tent";
    double s = 2.0, a = -2.0, alpha = 0.5, theta = 1.9, gamma = 0.382, c = 0.5;
    int k_max = 8;
    double birkhoff_x0 = -1;
    long birkhoff_n = 0;
};

interval::PiecewiseMonotoneMap map_from_args(const IntervalArgs& a) {
    std::map<std::string, double> params;
    if (a.family == "tent") params["s"] = a.s;
    if (a.family == "quadratic") params["a"] = a.a;
    if (a.family == "manneville_pomeau") params["alpha"] = a.alpha;
    if (a.family == "lorenz1d") {
        params["Theta"] = a.theta;
        params["alpha"] = a.alpha;
    }
    if (a.family == "rotation") params["gamma"] = a.gamma;
    if (a.family == "constant") params["c"] = a.c;
    return interval::model_catalog(a.family, params);
}

int cmd_entropy_interval(const GlobalOptions& g, const IntervalArgs& a) {
    auto f = map_from_args(a);
    auto cert = interval::find_strict_horseshoe(f, a.k_max);
    json summary{{"command", "entropy-interval"}, {"family", a.family}};
    if (cert) {
        auto cert_json = io::certificate_to_json(*cert);
        io::write_file(artifact_path(g, "certificate.json"), cert_json.dump(2) + "\n");
        summary["bound_nats"] = cert->bound_nats;
        summary["k"] = cert->k;
        summary["p"] = cert->p;
        summary["certificate_file"] = "certificate.json";
    } else {
        summary["bound_nats"] = 0.0;
        summary["certificate"] = nullptr;
    }
    if (a.birkhoff_n > 0) {
        auto series = interval::birkhoff_series(f, a.birkhoff_x0, [](double x) { return x; }, a.birkhoff_n);
        std::ostringstream csv;
        csv << "# schema=" << io::kSchemaVersion << "\n";
        csv << "m,average\n";
        for (std::size_t m = 0; m < series.size(); ++m)
            csv << (m + 1) << "," << io::format_double(series[m]) << "\n";
        auto path = artifact_path(g, "birkhoff.csv");
        io::write_file(path, csv.str());
        summary["birkhoff_file"] = "birkhoff.csv";
    }
    emit(summary);
    return 0;
}

int cmd_entropy_suspension(const GlobalOptions& g, const std::string& spec_arg,
                           const std::string& roof_csv) {
    auto spec = spec_from_option(spec_arg);
    auto roof = parse_doubles(roof_csv);
    double entropy = irregular::suspension_entropy(spec, roof);
    json summary{{"command", "entropy-suspension"}, {"entropy_nats", entropy}};
    io::write_file(artifact_path(g, "entropy_suspension.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

int cmd_entropy_scaling(const GlobalOptions& g, const std::string& spec_arg, int k) {
    auto spec = spec_from_option(spec_arg);
    double defect = symbolic::entropy_iterate_scaling_check(spec, k);
    json summary{{"command", "entropy-scaling"}, {"k", k}, {"defect", defect}};
    io::write_file(artifact_path(g, "entropy_scaling.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

// ---------------------------------------------------------------------------
// dim

int cmd_dim_moran(const GlobalOptions& g, const std::string& ratios_csv) {
    auto ratios = parse_doubles(ratios_csv);
    double dim = dimension::moran_dimension(ratios);
    json summary{{"command", "dim-moran"}, {"dimension", dim}};
    io::write_file(artifact_path(g, "dim_moran.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

struct BoxArgs {
    std::string input;
    std::string generator = "uniform2";
    int depth = 10;
    long count = 100000;
    double eps_min = 0.0009765625; // 2^-10
    double eps_max = 0.25;
    int levels = 9;
};

dimension::PointCloud cloud_from_args(const GlobalOptions& g, const BoxArgs& a) {
    dimension::PointCloud cloud;
    if (!a.input.empty()) {
        std::ifstream in(a.input);
        if (!in) throw error(errc::bad_params, "cannot open " + a.input);
        std::string line;
        int dim = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto values = parse_doubles(line);
            if (dim == 0) dim = static_cast<int>(values.size());
            if (static_cast<int>(values.size()) != dim)
                throw error(errc::bad_params, "inconsistent point dimensions");
            cloud.coords.insert(cloud.coords.end(), values.begin(), values.end());
        }
        cloud.dim = std::max(1, dim);
        return cloud;
    }
    if (a.generator == "uniform2") {
        cloud.dim = 2;
        cloud.coords.resize(static_cast<std::size_t>(2 * a.count));
        for (long i = 0; i < 2 * a.count; ++i)
            cloud.coords[static_cast<std::size_t>(i)] = uniform01(g.seed, static_cast<std::uint64_t>(i));
        return cloud;
    }
    dimension::MoranSystem cantor({1.0 / 3.0, 1.0 / 3.0}, std::vector<double>{0.0, 2.0 / 3.0}, true);
    auto pts = dimension::ifs_attractor(cantor, a.depth);
    if (a.generator == "cantor") {
        cloud.dim = 1;
        cloud.coords = pts;
        return cloud;
    }
    if (a.generator == "cantor2") {
        cloud.dim = 2;
        cloud.coords.reserve(pts.size() * pts.size() * 2);
        for (double x : pts)
            for (double y : pts) {
                cloud.coords.push_back(x);
                cloud.coords.push_back(y);
            }
        return cloud;
    }
    throw error(errc::bad_params, "unknown generator " + a.generator);
}

int cmd_dim_box(const GlobalOptions& g, const BoxArgs& a) {
    auto cloud = cloud_from_args(g, a);
    // per-scale counts are independent; workers fill slots indexed by level
    dimension::BoxCountReport probe = dimension::box_dimension(cloud, a.eps_min, a.eps_max, a.levels);
    if (g.threads > 1) {
        std::vector<long> counts(probe.scales.size(), 0);
        run_chunks(static_cast<long>(probe.scales.size()), g.threads, [&](int, long begin, long end) {
            for (long i = begin; i < end; ++i)
                counts[static_cast<std::size_t>(i)] =
                    dimension::detail::count_boxes(cloud, probe.scales[static_cast<std::size_t>(i)]);
        });
        if (counts != probe.counts) throw error(errc::precondition, "thread merge mismatch");
    }
    io::write_file(artifact_path(g, "box_counts.csv"), io::box_counts_csv(probe));
    auto summary = io::box_summary_json(probe);
    summary["command"] = "dim-box";
    summary["counts_file"] = "box_counts.csv";
    io::write_file(artifact_path(g, "box_summary.json"), summary.dump(2) + "\n");
    if (g.svg) {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < probe.scales.size(); ++i) {
            xs.push_back(std::log(1.0 / probe.scales[i]));
            ys.push_back(std::log(static_cast<double>(probe.counts[i])));
        }
        io::write_file(artifact_path(g, "box.svg"),
                       io::svg_polyline(xs, ys, "log 1/eps", "log N(eps)", "box counting"));
    }
    emit(summary);
    return 0;
}

int cmd_dim_shift_metric(const GlobalOptions& g, const std::string& spec_arg, int lo, int hi) {
    auto spec = spec_from_option(spec_arg);
    double dim = dimension::shift_metric_dimension(spec, lo, hi);
    json summary{{"command", "dim-shift-metric"}, {"dimension", dim}, {"depth_lo", lo}, {"depth_hi", hi}};
    io::write_file(artifact_path(g, "dim_shift_metric.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

struct HorseshoeArgs {
    double lambda_u = 3.0, mu_s = 1.0 / 3.0;
    int k = 2, du_index = 1, ds_index = 1;
};

int cmd_dim_horseshoe(const GlobalOptions& g, const HorseshoeArgs& a) {
    dimension::HorseshoeSpec spec(a.lambda_u, a.mu_s, a.k, a.du_index, a.ds_index);
    auto d = dimension::horseshoe_dimension(spec);
    json summary{{"command", "dim-horseshoe"},
                 {"d_u", d.d_u},
                 {"d_s", d.d_s},
                 {"total", d.total},
                 {"irregular_lower_bound", d.irregular_lower_bound}};
    io::write_file(artifact_path(g, "dim_horseshoe.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

// ---------------------------------------------------------------------------
// lorenz

lorenz::LorenzModel model_from_option(const std::string& model_arg) {
    if (model_arg.empty()) return lorenz::LorenzModel::classic();
    return io::lorenz_model_from_json(load_json_arg(model_arg));
}

int cmd_lorenz_validate(const GlobalOptions& g, const std::string& model_arg) {
    auto model = model_from_option(model_arg);
    auto summary = io::lorenz_model_to_json(model);
    summary["command"] = "lorenz-validate";
    io::write_file(artifact_path(g, "lorenz_model.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

int cmd_lorenz_map(const GlobalOptions& g, const std::string& model_arg, double x, double y,
                   int steps) {
    auto model = model_from_option(model_arg);
    std::ostringstream csv;
    csv << "# schema=" << io::kSchemaVersion << "\n";
    csv << "n,x,y\n";
    lorenz::PoincareState state{x, y};
    csv << 0 << "," << io::format_double(state.x) << "," << io::format_double(state.y) << "\n";
    for (int n = 1; n <= steps; ++n) {
        state = lorenz::poincare_map(model, state);
        csv << n << "," << io::format_double(state.x) << "," << io::format_double(state.y) << "\n";
    }
    auto path = artifact_path(g, "lorenz_orbit.csv");
    io::write_file(path, csv.str());
    emit(json{{"command", "lorenz-map"},
              {"orbit_file", "lorenz_orbit.csv"},
              {"final_x", state.x},
              {"final_y", state.y},
              {"steps", steps}});
    return 0;
}

struct LorenzDemoArgs {
    std::string model_arg;
    int m_count = 12, m0 = 2, roof_radius = 3, k_max = 12;
    std::string roof_constant, C_override;
};

int cmd_lorenz_demo(const GlobalOptions& g, const LorenzDemoArgs& a) {
    auto model = model_from_option(a.model_arg);
    lorenz::DemoOptions opts;
    opts.m_count = a.m_count;
    opts.m0 = a.m0;
    opts.roof_radius = a.roof_radius;
    opts.k_max = a.k_max;
    if (!a.roof_constant.empty()) opts.roof_override = io::parse_rational(a.roof_constant);
    if (!a.C_override.empty()) opts.C_override = io::parse_rational(a.C_override);
    auto demo = lorenz::lorenz_irregular_demo(model, opts);

    auto csv_path = artifact_path(g, "demo_checkpoints.csv");
    io::write_file(csv_path, io::report_checkpoints_csv(demo.report));
    auto summary = io::report_summary_json(demo.report);
    summary["command"] = "lorenz-demo";
    summary["model"] = io::lorenz_model_to_json(model);
    summary["certificate"] = io::certificate_to_json(demo.certificate);
    summary["rho_min"] = demo.rho_min;
    summary["rho_max"] = demo.rho_max;
    summary["C"] = to_double(demo.C);
    summary["C_exact"] = io::format_rational(demo.C);
    summary["roof_sampling_error"] = demo.roof_sampling_error;
    summary["checkpoints_file"] = "demo_checkpoints.csv";
    io::write_file(artifact_path(g, "demo_summary.json"), summary.dump(2) + "\n");
    if (g.svg) {
        std::vector<double> xs, ys;
        for (const auto& cp : demo.report.checkpoints) {
            xs.push_back(cp.j);
            ys.push_back(to_double(cp.ratio));
        }
        io::write_file(artifact_path(g, "demo.svg"),
                       io::svg_polyline(xs, ys, "checkpoint j", "ratio", "demo checkpoint ratios"));
    }
    emit(summary);
    return 0;
}

// ---------------------------------------------------------------------------
// porcupine

int cmd_porcupine_spines(const GlobalOptions& g, double t, double a, const std::string& past) {
    skewprod::PorcupineModel model(t, a);
    auto word = io::word_from_string(past);
    std::ostringstream csv;
    csv << "# schema=" << io::kSchemaVersion << "\n";
    csv << "past,lo,hi,length\n";
    skewprod::SpineApprox last{};
    for (std::size_t depth = 1; depth <= word.size(); ++depth) {
        symbolic::Word prefix(word.begin(), word.begin() + static_cast<long>(depth));
        last = skewprod::spine(model, prefix);
        csv << io::word_to_string(prefix) << "," << io::format_double(last.lo) << ","
            << io::format_double(last.hi) << "," << io::format_double(last.length()) << "\n";
    }
    auto path = artifact_path(g, "spines.csv");
    io::write_file(path, csv.str());
    emit(json{{"command", "porcupine-spines"},
              {"spines_file", "spines.csv"},
              {"final_lo", last.lo},
              {"final_hi", last.hi},
              {"final_length", last.length()}});
    return 0;
}

int cmd_porcupine_fraction(const GlobalOptions& g, double t, double a, const std::string& depths_csv,
                           long samples) {
    skewprod::PorcupineModel model(t, a);
    auto depths = parse_ints(depths_csv);
    std::ostringstream csv;
    csv << "# schema=" << io::kSchemaVersion << "\n";
    csv << "depth,fraction_trivial\n";
    json fractions = json::array();
    for (int depth : depths) {
        double fraction;
        if (g.threads > 1) {
            // shard the sample range; counts add up independent of scheduling
            std::vector<long> counts(static_cast<std::size_t>(g.threads), 0);
            run_chunks(samples, g.threads, [&](int slot, long begin, long end) {
                long trivial = 0;
                symbolic::Word past(static_cast<std::size_t>(depth));
                for (long s = begin; s < end; ++s) {
                    for (int i = 0; i < depth; ++i)
                        past[static_cast<std::size_t>(i)] = static_cast<symbolic::Symbol>(
                            splitmix64(g.seed, static_cast<std::uint64_t>(s) * 100003ULL +
                                                   static_cast<std::uint64_t>(i)) &
                            1ULL);
                    if (skewprod::spine(model, past).length() < 1e-6) ++trivial;
                }
                counts[static_cast<std::size_t>(slot)] = trivial;
            });
            long total = 0;
            for (long c : counts) total += c;
            fraction = static_cast<double>(total) / static_cast<double>(samples);
        } else {
            fraction = skewprod::trivial_fraction(model, depth, samples, g.seed);
        }
        csv << depth << "," << io::format_double(fraction) << "\n";
        fractions.push_back(json{{"depth", depth}, {"fraction_trivial", fraction}});
    }
    auto path = artifact_path(g, "fraction.csv");
    io::write_file(path, csv.str());
    json summary{{"command", "porcupine-fraction"}, {"fractions", fractions}, {"csv_file", "fraction.csv"}};
    io::write_file(artifact_path(g, "fraction_summary.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

// ---------------------------------------------------------------------------
// skew

int cmd_skew_graph(const GlobalOptions& g, const std::string& spec_arg, const std::string& kappa_csv,
                   const std::string& shift_csv, const std::string& past) {
    auto spec = spec_from_option(spec_arg);
    skewprod::GraphSkewProduct skew(spec, parse_doubles(kappa_csv), parse_doubles(shift_csv));
    auto word = io::word_from_string(past);
    auto value = skewprod::invariant_graph(skew, word);
    json summary{{"command", "skew-graph"},
                 {"value", value.value},
                 {"error_bound", value.error_bound},
                 {"depth", past.size()}};
    io::write_file(artifact_path(g, "skew_graph.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

struct LiftArgs {
    IrregularArgs irregular;
    std::string kappa = "0.5,-0.3", shift = "0.2,0.9";
    std::string fibers = "-1,0,0.5,1";
};

int cmd_skew_lift_check(const GlobalOptions& g, const LiftArgs& a) {
    auto spec = spec_from_option(a.irregular.spec_arg);
    auto program = build_program(spec, a.irregular);
    auto psi = irregular::build_psi(spec, program.p0, program.p1, a.irregular.m0);
    auto roof = roof_from_options(spec, a.irregular.roof_file, a.irregular.roof_constant);
    skewprod::GraphSkewProduct skew(spec, parse_doubles(a.kappa), parse_doubles(a.shift));
    skewprod::LiftedObservable obs{psi, false};
    auto fibers = parse_doubles(a.fibers);
    auto result = skewprod::lift_irregular_check(skew, program, obs, roof, fibers);
    json summary{{"command", "skew-lift-check"},
                 {"result", result.all_equal},
                 {"fibers", fibers.size()},
                 {"base_verdict", result.base_report.verdict}};
    io::write_file(artifact_path(g, "lift_check.json"), summary.dump(2) + "\n");
    emit(summary);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"irrlab: constructions and estimators for divergent Birkhoff averages"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--out", g.out_dir, "output directory for artifacts");
    app.add_option("--seed", g.seed, "seed for the splitmix64 counter generator");
    app.add_option("--threads", g.threads, "worker threads for sweeps (results independent of count)");
    app.add_flag("--svg", g.svg, "additionally write SVG plots");
    app.add_option("--format", g.format, "primary artifact format tag (csv|json|svg)");

    std::function<int()> action;

    // irregular
    auto* irr = app.add_subcommand("irregular", "block constructions over subshifts");
    IrregularArgs ia;
    auto* construct = irr->add_subcommand("construct", "assemble the block program");
    auto* trace = irr->add_subcommand("trace", "checkpoint ratios of the block program");
    for (auto* sub : {construct, trace}) {
        sub->add_option("--spec", ia.spec_arg, "subshift JSON (inline or file); default full 2-shift");
        sub->add_option("--p0", ia.p0, "periodic word for the even blocks");
        sub->add_option("--p1", ia.p1, "periodic word for the odd blocks");
        sub->add_option("--C", ia.C, "roof bound constant (rational)");
        sub->add_option("--delta", ia.delta, "schedule margin (rational)");
        sub->add_option("--m-count", ia.m_count, "number of blocks");
    }
    trace->add_option("--m0", ia.m0, "observable window radius");
    trace->add_option("--j0", ia.j0, "transient cutoff for liminf/limsup estimates");
    trace->add_option("--roof-file", ia.roof_file, "roof table JSON");
    trace->add_option("--roof-constant", ia.roof_constant, "constant roof value (rational)");
    construct->callback([&] { action = [&] { return cmd_irregular_construct(g, ia); }; });
    trace->callback([&] { action = [&] { return cmd_irregular_trace(g, ia); }; });

    // entropy
    auto* ent = app.add_subcommand("entropy", "entropy computations");
    std::string ent_spec;
    int ent_k = 2;
    std::string ent_roof = "1,1";
    auto* esft = ent->add_subcommand("sft", "log of the Perron root of the transition matrix");
    esft->add_option("--spec", ent_spec, "subshift JSON");
    esft->callback([&] { action = [&] { return cmd_entropy_sft(g, ent_spec); }; });

    IntervalArgs iva;
    auto* eint = ent->add_subcommand("interval", "horseshoe lower bound for an interval map");
    eint->add_option("--family", iva.family, "tent|quadratic|manneville_pomeau|lorenz1d|rotation|identity|constant");
    eint->add_option("--s", iva.s, "tent slope");
    eint->add_option("--a", iva.a, "quadratic parameter");
    eint->add_option("--alpha", iva.alpha, "exponent parameter");
    eint->add_option("--Theta", iva.theta, "lorenz1d amplitude");
    eint->add_option("--gamma", iva.gamma, "rotation angle");
    eint->add_option("--c", iva.c, "constant value");
    eint->add_option("--k-max", iva.k_max, "largest iterate to search");
    eint->add_option("--birkhoff-x0", iva.birkhoff_x0, "also emit running averages from this point");
    eint->add_option("--birkhoff-n", iva.birkhoff_n, "number of averages to emit");
    eint->callback([&] { action = [&] { return cmd_entropy_interval(g, iva); }; });

    auto* esus = ent->add_subcommand("suspension", "pressure-root entropy of a suspension");
    esus->add_option("--spec", ent_spec, "subshift JSON");
    esus->add_option("--roof", ent_roof, "per-symbol roof values, comma separated");
    esus->callback([&] { action = [&] { return cmd_entropy_suspension(g, ent_spec, ent_roof); }; });

    auto* escl = ent->add_subcommand("scaling", "iterate recoding entropy defect");
    escl->add_option("--spec", ent_spec, "subshift JSON");
    escl->add_option("--k", ent_k, "iterate");
    escl->callback([&] { action = [&] { return cmd_entropy_scaling(g, ent_spec, ent_k); }; });

    // dim
    auto* dim = app.add_subcommand("dim", "dimension estimators");
    std::string dim_ratios = "0.3333333333,0.3333333333";
    auto* dmor = dim->add_subcommand("moran", "root of sum r_i^s = 1");
    dmor->add_option("--ratios", dim_ratios, "contraction ratios, comma separated");
    dmor->callback([&] { action = [&] { return cmd_dim_moran(g, dim_ratios); }; });

    BoxArgs ba;
    auto* dbox = dim->add_subcommand("box", "dyadic box counting slope");
    dbox->add_option("--input", ba.input, "CSV of points (one point per line)");
    dbox->add_option("--generator", ba.generator, "uniform2|cantor|cantor2");
    dbox->add_option("--depth", ba.depth, "attractor depth for the cantor generators");
    dbox->add_option("--count", ba.count, "sample count for uniform2");
    dbox->add_option("--eps-min", ba.eps_min, "smallest scale");
    dbox->add_option("--eps-max", ba.eps_max, "largest scale");
    dbox->add_option("--levels", ba.levels, "number of dyadic levels");
    dbox->callback([&] { action = [&] { return cmd_dim_box(g, ba); }; });

    int depth_lo = 5, depth_hi = 30;
    auto* dshift = dim->add_subcommand("shift-metric", "cylinder-growth dimension of a subshift");
    dshift->add_option("--spec", ent_spec, "subshift JSON");
    dshift->add_option("--depth-lo", depth_lo, "smallest cylinder depth");
    dshift->add_option("--depth-hi", depth_hi, "largest cylinder depth");
    dshift->callback([&] { action = [&] { return cmd_dim_shift_metric(g, ent_spec, depth_lo, depth_hi); }; });

    HorseshoeArgs ha;
    auto* dhs = dim->add_subcommand("horseshoe", "affine horseshoe dimension split");
    dhs->add_option("--lambda-u", ha.lambda_u, "unstable expansion");
    dhs->add_option("--mu-s", ha.mu_s, "stable contraction");
    dhs->add_option("--k", ha.k, "branch count");
    dhs->add_option("--du-index", ha.du_index, "unstable index");
    dhs->add_option("--ds-index", ha.ds_index, "stable index");
    dhs->callback([&] { action = [&] { return cmd_dim_horseshoe(g, ha); }; });

    // lorenz
    auto* lor = app.add_subcommand("lorenz", "geometric model with a linear saddle");
    std::string lor_model;
    auto* lval = lor->add_subcommand("validate", "check parameters and report derived flags");
    lval->add_option("--model", lor_model, "model JSON (inline or file); default classic parameters");
    lval->callback([&] { action = [&] { return cmd_lorenz_validate(g, lor_model); }; });

    double lx = 0.5, ly = 0.2;
    int lsteps = 50;
    auto* lmap = lor->add_subcommand("map", "iterate the return map");
    lmap->add_option("--model", lor_model, "model JSON");
    lmap->add_option("--x", lx, "initial x");
    lmap->add_option("--y", ly, "initial y");
    lmap->add_option("--steps", lsteps, "iterations");
    lmap->callback([&] { action = [&] { return cmd_lorenz_map(g, lor_model, lx, ly, lsteps); }; });

    LorenzDemoArgs lda;
    auto* ldemo = lor->add_subcommand("demo", "oscillation construction on a coded horseshoe");
    ldemo->add_option("--model", lda.model_arg, "model JSON");
    ldemo->add_option("--m-count", lda.m_count, "number of blocks");
    ldemo->add_option("--m0", lda.m0, "observable window radius");
    ldemo->add_option("--roof-radius", lda.roof_radius, "roof sampling window radius");
    ldemo->add_option("--k-max", lda.k_max, "largest iterate for the horseshoe search");
    ldemo->add_option("--roof-constant", lda.roof_constant, "constant roof override (rational)");
    ldemo->add_option("--C", lda.C_override, "bound override (rational)");
    ldemo->callback([&] { action = [&] { return cmd_lorenz_demo(g, lda); }; });

    // porcupine
    auto* por = app.add_subcommand("porcupine", "skew products with interval fibers");
    double pt = 0.5, pa = 2.0;
    std::string ppast = "1101";
    auto* pspine = por->add_subcommand("spines", "nested fiber intervals along a past");
    pspine->add_option("--t", pt, "fold parameter in (0,1)");
    pspine->add_option("--a", pa, "concave map parameter");
    pspine->add_option("--past", ppast, "past word, most recent symbol first");
    pspine->callback([&] { action = [&] { return cmd_porcupine_spines(g, pt, pa, ppast); }; });

    std::string pdepths = "10,30,60";
    long psamples = 10000;
    auto* pfrac = por->add_subcommand("fraction", "monte carlo fraction of trivial spines");
    pfrac->add_option("--t", pt, "fold parameter in (0,1)");
    pfrac->add_option("--a", pa, "concave map parameter");
    pfrac->add_option("--depths", pdepths, "past depths, comma separated");
    pfrac->add_option("--samples", psamples, "sample count");
    pfrac->callback([&] { action = [&] { return cmd_porcupine_fraction(g, pt, pa, pdepths, psamples); }; });

    // skew
    auto* skw = app.add_subcommand("skew", "affine fiber contractions over a subshift");
    std::string skappa = "0.5,0.5", sshift = "0,1", spast = "1101", sspec;
    auto* sgraph = skw->add_subcommand("graph", "invariant graph value by pullback");
    sgraph->add_option("--spec", sspec, "subshift JSON");
    sgraph->add_option("--kappa", skappa, "per-symbol fiber slopes");
    sgraph->add_option("--shift", sshift, "per-symbol fiber offsets");
    sgraph->add_option("--past", spast, "past word, most recent symbol first");
    sgraph->callback([&] { action = [&] { return cmd_skew_graph(g, sspec, skappa, sshift, spast); }; });

    LiftArgs la;
    auto* slift = skw->add_subcommand("lift-check", "base oscillation is fiber independent");
    slift->add_option("--spec", la.irregular.spec_arg, "subshift JSON");
    slift->add_option("--p0", la.irregular.p0, "even-block periodic word");
    slift->add_option("--p1", la.irregular.p1, "odd-block periodic word");
    slift->add_option("--C", la.irregular.C, "roof bound constant (rational)");
    slift->add_option("--delta", la.irregular.delta, "schedule margin (rational)");
    slift->add_option("--m-count", la.irregular.m_count, "number of blocks");
    slift->add_option("--m0", la.irregular.m0, "observable window radius");
    slift->add_option("--roof-file", la.irregular.roof_file, "roof table JSON");
    slift->add_option("--roof-constant", la.irregular.roof_constant, "constant roof (rational)");
    slift->add_option("--kappa", la.kappa, "per-symbol fiber slopes");
    slift->add_option("--shift", la.shift, "per-symbol fiber offsets");
    slift->add_option("--fibers", la.fibers, "starting fiber values");
    slift->callback([&] { action = [&] { return cmd_skew_lift_check(g, la); }; });

    // allow global options (--out, --seed, ...) after the subcommand
    auto enable_fallthrough = [](auto&& self, CLI::App* node) -> void {
        for (auto* sub : node->get_subcommands({})) {
            sub->fallthrough();
            self(self, sub);
        }
    };
    enable_fallthrough(enable_fallthrough, &app);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!action) throw error(errc::bad_params, "no subcommand selected");
        return action();
    } catch (const error& e) {
        std::cout << json{{"error", e.what()}, {"code", errc_name(e.code())}}.dump() << "\n";
        return e.code() == errc::budget_exceeded ? 2 : 1;
    } catch (const std::exception& e) {
        std::cout << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
