// Config-driven experiment runner: ties the graph and sphere modules into
// reproducible CSV/JSON/SVG reports.

#include "specnorm/graphbounds.hpp"
#include "specnorm/graphs.hpp"
#include "specnorm/report.hpp"
#include "specnorm/rng.hpp"
#include "specnorm/rotation.hpp"
#include "specnorm/spectral.hpp"
#include "specnorm/sphere.hpp"
#include "specnorm/treeops.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using json = nlohmann::json;
using namespace specnorm;
namespace fs = std::filesystem;

namespace {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};
struct ResourceBudgetExceeded : std::runtime_error {
    explicit ResourceBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// key = value with optional [section] headers; section names prefix keys as
// "section.key".  '#' starts a comment.
std::map<std::string, std::string> parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    auto trim = [](std::string s) {
        auto a = s.find_first_not_of(" \t\r");
        auto b = s.find_last_not_of(" \t\r");
        return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line without '=': " + line);
        std::string key = trim(line.substr(0, eq));
        if (!section.empty()) key = section + "." + key;
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::vector<double> parse_p_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "inf" || tok == "Inf" || tok == "INF")
            out.push_back(std::numeric_limits<double>::infinity());
        else
            out.push_back(std::stod(tok));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::string p_tag(double p) {
    if (std::isinf(p)) return "inf";
    std::ostringstream out;
    out << p;
    return out.str();
}

struct Check {
    std::string name;
    bool pass;
    double value;
    double threshold;
};

struct Runner {
    std::map<std::string, std::string> cfg;
    fs::path out_dir;
    std::uint64_t seed = 0;
    bool dump_op = false;

    json report;
    std::vector<Check> checks;
    RunManifest manifest;
    std::vector<std::pair<std::string, double>> stage_times;

    std::string get(const std::string& key, const std::string& dflt) const {
        auto it = cfg.find(key);
        return it == cfg.end() ? dflt : it->second;
    }

    void add_check(const std::string& name, bool pass, double value, double threshold) {
        checks.push_back({name, pass, value, threshold});
    }

    void emit(const CsvTable& t, const std::string& name) {
        fs::path p = out_dir / name;
        t.write(p.string());
        manifest.add_file(p.string(), name);
    }

    template <typename F>
    void stage(const std::string& name, F body) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        stage_times.emplace_back(name, dt);
    }

    // ---------------------------------------------------------- tree mode

    void run_tree_check() {
        std::vector<int> qs = parse_int_list(get("tree.q_list", "2,3"));
        int n_max = std::stoi(get("tree.n_max", "12"));
        CsvTable t;
        t.columns = {"q", "n", "max_deviation"};
        double worst = 0.0;
        for (int q : qs)
            for (int n = 2; n <= n_max; n += 2) {
                double dev = tree_kernel_check(q, n);
                worst = std::max(worst, dev);
                t.add_row({std::to_string(q), std::to_string(n), num(dev)});
            }
        emit(t, "tree_kernel.csv");
        add_check("tree.kernel_closed_form", worst <= 1e-12, worst, 1e-12);
        report["tree_check"] = {{"q_list", qs}, {"n_max", n_max}, {"max_deviation", worst}};
    }

    // --------------------------------------------------------- graph mode

    json graph_report_one(const RegularGraph& g, const std::vector<double>& p_list, double delta,
                          const std::string& tag) {
        if (g.num_vertices > 5000)
            throw ResourceBudgetExceeded("|G| > 5000: " + std::to_string(g.num_vertices));
        for (double p : p_list)
            if (!(p > 2.0)) throw ConfigError("graph mode requires p > 2");

        SpectralData spec = eig_sym(adjacency_op(g));
        DelocalizationReport rep = verify_graph_theorem(g, spec, p_list, delta);

        CsvTable sp;
        sp.columns = {"index", "lambda", "theta", "tempered"};
        for (std::size_t j = 0; j < spec.size(); ++j)
            sp.add_row({std::to_string(j), num(spec.eigenvalues[j]),
                        num(spec.thetas[j].tempered ? spec.thetas[j].value
                                                    : -spec.thetas[j].value),
                        spec.tempered[j] ? "1" : "0"});
        emit(sp, "spectrum" + tag + ".csv");

        CsvTable sn;
        sn.columns = {"n", "norm_1_inf", "implied_delta"};
        for (const auto& row : rep.sn_table)
            sn.add_row({std::to_string(row.n), num(row.norm_1_inf), num(row.implied_delta)});
        emit(sn, "sn_norms" + tag + ".csv");

        CsvTable er;
        er.columns = {"index", "lambda", "tempered"};
        for (double p : p_list) {
            er.columns.push_back("norm_p" + p_tag(p));
            er.columns.push_back("ratio_p" + p_tag(p));
        }
        for (const auto& row : rep.eig_table) {
            std::vector<std::string> cells = {std::to_string(row.index), num(row.lambda),
                                              row.tempered ? "1" : "0"};
            for (std::size_t i = 0; i < p_list.size(); ++i) {
                cells.push_back(num(row.p_norms[i]));
                cells.push_back(num(row.ratios[i]));
            }
            er.add_row(cells);
        }
        emit(er, "eig_ratios" + tag + ".csv");

        if (dump_op) {
            Matrix tq = adjacency_op(g);
            CsvTable op;
            op.columns.resize(g.num_vertices);
            for (int j = 0; j < g.num_vertices; ++j) op.columns[j] = "v" + std::to_string(j);
            for (int i = 0; i < g.num_vertices; ++i) {
                std::vector<std::string> cells(g.num_vertices);
                for (int j = 0; j < g.num_vertices; ++j) cells[j] = num(tq(i, j));
                op.add_row(cells);
            }
            emit(op, "op_tq" + tag + ".csv");
        }

        json j;
        j["label"] = rep.graph_label;
        j["q"] = rep.q;
        j["girth"] = rep.girth;
        j["inj_rad"] = rep.inj_rad;
        j["delta"] = rep.delta;
        j["admissible_n"] = rep.admissible_n;
        j["epsilon_schedule"] = rep.epsilon_schedule;
        j["p_list"] = json::array();
        for (double p : p_list) j["p_list"].push_back(p_tag(p));
        j["max_tempered_ratio"] = rep.max_tempered_ratio;
        j["max_untempered_ratio"] = rep.max_untempered_ratio;
        add_check("graph.admissible_n_positive" + tag, rep.admissible_n >= 1,
                  rep.admissible_n, 1.0);
        return j;
    }

    void run_graph_report() {
        std::string arg = get("graph.spec", "random:n=500,d=4,seed=11,girth=8");
        double delta = std::stod(get("graph.delta", "0.3"));
        std::vector<double> p_list = parse_p_list(get("graph.p_list", "4,8,inf"));
        RegularGraph g = graph_from_arg(arg);
        report["graph_report"] = graph_report_one(g, p_list, delta, "");
    }

    void run_graph_series() {
        // ratio vs |G| trend over a size series, one plot per p
        std::vector<int> sizes = parse_int_list(get("graph.sizes", "300,500,1000"));
        double delta = std::stod(get("graph.delta", "0.3"));
        std::vector<double> p_list = parse_p_list(get("graph.p_list", "4,8,inf"));
        json series = json::array();
        std::vector<PlotSeries> ps(p_list.size());
        for (std::size_t i = 0; i < p_list.size(); ++i) ps[i].name = "p=" + p_tag(p_list[i]);
        for (int n : sizes) {
            GraphBuildSpec spec;
            spec.kind = GraphKind::random_regular;
            spec.n = n;
            spec.degree = 4;
            spec.min_girth = (int)std::stol(get("graph.min_girth", "8"));
            spec.seed = derive_seed(seed, "series-" + std::to_string(n));
            RegularGraph g = build_graph(spec);
            json j = graph_report_one(g, p_list, delta, "_n" + std::to_string(n));
            for (std::size_t i = 0; i < p_list.size(); ++i) {
                ps[i].x.push_back(n);
                ps[i].y.push_back(j["max_tempered_ratio"][i].get<double>());
            }
            series.push_back(j);
        }
        report["graph_series"] = series;
        if (p_list.empty()) {
            manifest.notes.push_back("graph ratio plot skipped: empty p_list");
        } else {
            PlotSpec plot;
            plot.title = "max tempered ratio vs |G|";
            plot.xlabel = "|G|";
            plot.ylabel = "max ||psi||_p sqrt(N)/||psi||_2";
            plot.series = ps;
            fs::path p = out_dir / "graph_ratio_vs_size.svg";
            if (write_svg_plot(plot, p.string()))
                manifest.add_file(p.string(), "graph_ratio_vs_size.svg");
        }
    }

    // -------------------------------------------------------- sphere mode

    void run_sphere_report() {
        std::string rot_arg = get("sphere.rotations", "default");
        RotationSet rot = (rot_arg == "default") ? default_rotation_set()
                                                 : load_rotation_set(rot_arg);
        std::vector<int> s_list = parse_int_list(get("sphere.s_list", "25,50,100,200"));
        std::vector<double> p_list = parse_p_list(get("sphere.p_list", "10,inf"));
        for (int s : s_list)
            if (s > 1000) throw ResourceBudgetExceeded("s > 1000");
        for (double p : p_list) {
            if (std::isinf(p)) continue;
            if (p <= 6.0) throw ConfigError("sphere theorem mode requires p > 8 (got p <= 6)");
            if (p <= 8.0)
                manifest.notes.push_back("warning: p in (6,8] uses the simplified kernel estimates");
        }

        auto rows = verify_sphere_theorem(rot, s_list, p_list);
        CsvTable t;
        t.columns = {"s", "p", "max_joint_norm", "ratio_sogge", "ratio_log",
                     "zonal_norm", "zonal_ratio_sogge"};
        for (const auto& r : rows)
            t.add_row({std::to_string(r.s), p_tag(r.p), num(r.max_joint_norm),
                       num(r.ratio_sogge), num(r.ratio_log), num(r.zonal_norm),
                       num(r.zonal_ratio_sogge)});
        emit(t, "sphere_theorem.csv");

        json jr = json::array();
        bool below_zonal = true;
        double worst_margin = 1e300;
        for (const auto& r : rows) {
            jr.push_back({{"s", r.s},
                          {"p", p_tag(r.p)},
                          {"max_joint_norm", r.max_joint_norm},
                          {"ratio_sogge", r.ratio_sogge},
                          {"ratio_log", r.ratio_log},
                          {"zonal_norm", r.zonal_norm},
                          {"zonal_ratio_sogge", r.zonal_ratio_sogge}});
            below_zonal = below_zonal && (r.ratio_sogge < r.zonal_ratio_sogge);
            worst_margin = std::min(worst_margin, r.zonal_ratio_sogge - r.ratio_sogge);
        }
        report["sphere_theorem"] = jr;
        add_check("sphere.joint_below_zonal", below_zonal, worst_margin, 0.0);

        // kernel split norms over the same s range, finite p only
        CsvTable kt;
        kt.columns = {"s", "p", "z1", "z2", "z3", "total", "tail"};
        for (double p : p_list) {
            if (std::isinf(p) || p <= 4.0) continue;
            for (int s : s_list) {
                KernelSplitNorms kn = kernel_split_norms(s, p);
                kt.add_row({std::to_string(s), p_tag(p), num(kn.z1), num(kn.z2), num(kn.z3),
                            num(kn.total), num(kn.tail)});
            }
        }
        emit(kt, "kernel_norms.csv");

        // word separation
        int words_n = std::stoi(get("sphere.words_n_max", "6"));
        bool distinct = words_distinct(rot, words_n);
        SeparationReport sep = separation_stats(rot, words_n, 100, 1e-3,
                                                derive_seed(seed, "separation"));
        CsvTable st;
        st.columns = {"n", "min_rotation_angle"};
        for (int n = 1; n <= words_n; ++n)
            st.add_row({std::to_string(n), num(sep.min_angle_per_length[n])});
        emit(st, "word_separation.csv");
        report["words"] = {{"n_max", words_n},
                           {"distinct", distinct},
                           {"fitted_c", sep.fitted_c},
                           {"max_close_words", sep.max_close_words}};
        add_check("sphere.words_distinct", distinct, distinct ? 1.0 : 0.0, 1.0);
        add_check("sphere.close_words", sep.max_close_words <= 2, sep.max_close_words, 2.0);

        // plots: ratio vs s per p, log-log with slope annotation
        if (p_list.empty()) {
            manifest.notes.push_back("sphere plots skipped: empty p_list");
        } else if (s_list.size() < 3) {
            manifest.notes.push_back("sphere plots skipped: fewer than 3 s values");
        } else {
            for (double p : p_list) {
                PlotSeries joint, zonal_s;
                joint.name = "joint max";
                zonal_s.name = "zonal";
                for (const auto& r : rows) {
                    if (r.p != p && !(std::isinf(r.p) && std::isinf(p))) continue;
                    joint.x.push_back(r.s);
                    joint.y.push_back(r.max_joint_norm);
                    zonal_s.x.push_back(r.s);
                    zonal_s.y.push_back(r.zonal_norm);
                }
                PlotSpec plot;
                plot.title = "||psi_s||_p vs s, p=" + p_tag(p);
                plot.xlabel = "s";
                plot.ylabel = "L^p norm";
                plot.loglog = true;
                plot.annotate_slope = true;
                plot.series = {joint, zonal_s};
                std::string name = "sphere_ratio_p" + p_tag(p) + ".svg";
                fs::path path = out_dir / name;
                if (write_svg_plot(plot, path.string())) manifest.add_file(path.string(), name);
            }
        }
    }

    // --------------------------------------------------------------- run

    int run(const std::string& mode) {
        fs::create_directories(out_dir);
        if (mode == "tree_check") {
            stage("tree_check", [&] { run_tree_check(); });
        } else if (mode == "graph_report") {
            stage("graph_report", [&] { run_graph_report(); });
        } else if (mode == "sphere_report") {
            stage("sphere_report", [&] { run_sphere_report(); });
        } else if (mode == "full") {
            stage("tree_check", [&] { run_tree_check(); });
            stage("graph_report", [&] { run_graph_report(); });
            stage("graph_series", [&] { run_graph_series(); });
            stage("sphere_report", [&] { run_sphere_report(); });
        } else {
            throw ConfigError("unknown mode: " + mode);
        }

        bool all_pass = true;
        json jchecks = json::array();
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            jchecks.push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"value", c.value},
                               {"threshold", c.threshold}});
        }
        report["mode"] = mode;
        report["seed"] = seed;
        report["checks"] = jchecks;
        if (!all_pass) {
            json failures = json::array();
            for (const auto& c : checks)
                if (!c.pass) failures.push_back(c.name);
            report["failures"] = failures;
        }
        fs::path rp = out_dir / "report.json";
        {
            std::ofstream out(rp);
            out << report.dump(2) << '\n';
        }
        manifest.add_file(rp.string(), "report.json");
        manifest.notes.push_back("tool version 1.0");
        for (const auto& [name, dt] : stage_times) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "stage %s: %.3f s", name.c_str(), dt);
            manifest.notes.push_back(buf);
        }
        manifest.seed = seed;
        manifest.write((out_dir / "manifest.json").string());
        return all_pass ? 0 : 1;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"specnorm: operator norms on regular graphs and the sphere"};
    std::string mode, config_path, out = "out", graph_arg, p_arg, s_arg;
    std::uint64_t seed = 12345;
    bool seed_given = false, dump_op = false;
    double delta = -1.0;

    app.add_option("mode", mode, "graph_report | tree_check | sphere_report | full")->required();
    app.add_option("--config", config_path, "config file (key = value, [section] tables)");
    app.add_option("--out", out, "output directory");
    auto* seed_opt = app.add_option("--seed", seed, "root RNG seed");
    app.add_option("--graph", graph_arg, "graph spec string or edge-list path");
    app.add_option("--p", p_arg, "comma-separated p list, 'inf' allowed");
    app.add_option("--s", s_arg, "comma-separated s list (sphere)");
    app.add_option("--delta", delta, "target delta for the graph theorem");
    app.add_flag("--dump-op", dump_op, "write operator matrices as CSV");
    CLI11_PARSE(app, argc, argv);
    seed_given = seed_opt->count() > 0;

    if (mode == "graph-report") mode = "graph_report";
    if (mode == "tree-check") mode = "tree_check";
    if (mode == "sphere-report") mode = "sphere_report";

#ifdef _OPENMP
    if (const char* threads = std::getenv("SPECNORM_THREADS"))
        omp_set_num_threads(std::max(1, std::atoi(threads)));
#endif

    try {
        Runner r;
        if (!config_path.empty()) r.cfg = parse_config(config_path);
        // command-line flags override the config
        if (!graph_arg.empty()) r.cfg["graph.spec"] = graph_arg;
        if (!p_arg.empty()) {
            r.cfg["graph.p_list"] = p_arg;
            r.cfg["sphere.p_list"] = p_arg;
        }
        if (!s_arg.empty()) r.cfg["sphere.s_list"] = s_arg;
        if (delta >= 0.0) r.cfg["graph.delta"] = std::to_string(delta);
        if (r.cfg.count("mode") && mode.empty()) mode = r.cfg["mode"];
        if (!r.cfg.count("out")) r.cfg["out"] = out;
        r.out_dir = (out != "out" || !r.cfg.count("out")) ? out : r.cfg["out"];
        r.seed = seed_given ? seed
                            : (r.cfg.count("seed") ? std::stoull(r.cfg["seed"]) : seed);
        r.dump_op = dump_op;

        // canonical config text -> hash (flags already folded in)
        std::ostringstream canon;
        canon << "mode=" << mode << '\n' << "seed=" << r.seed << '\n';
        for (const auto& [k, v] : r.cfg)
            if (k != "seed" && k != "out") canon << k << '=' << v << '\n';
        r.manifest.config_hash = hex64(fnv1a64(canon.str()));

        return r.run(mode);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "specnorm: %s\n", e.what());
        return 2;
    }
}
