#include "syncap/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "syncap/capacity.hpp"
#include "syncap/channel.hpp"
#include "syncap/exact_law.hpp"
#include "syncap/guard.hpp"
#include "syncap/monte_carlo.hpp"
#include "syncap/series.hpp"

namespace syncap {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

std::string timestamp_utc() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char b[40];
    std::strftime(b, sizeof b, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return b;
}

json make_meta() { return json{{"version", kVersion}, {"timestamp", timestamp_utc()}}; }

void persist(const std::string& out_dir, const json& record) {
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / "runs.jsonl", std::ios::app);
    if (!f) throw std::runtime_error("cannot open " + out_dir + "/runs.jsonl for append");
    f << record.dump() << "\n";
}

std::vector<json> load_records(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path);
    std::vector<json> recs;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        recs.push_back(json::parse(line));
    }
    return recs;
}

// ---- pure result payloads (params in, results out; replay re-runs these) ----

json estimate_json(const Estimate& e) {
    return json{{"mean", e.mean}, {"std_error", e.std_error}, {"samples", e.samples}};
}

json series_results(const json& p) {
    const std::size_t L = p.at("L");
    const SeriesValue g = g1(L), a = a1(L), e = e_log_l0(L);
    json r{{"g1", {{"value", g.value}, {"tail_bound", g.tail_bound}}},
           {"a1", {{"value", a.value}, {"tail_bound", a.tail_bound}}},
           {"e_log_l0", {{"value", e.value}, {"tail_bound", e.tail_bound}}},
           {"expansion", json::array()}};
    for (const double alpha : p.at("alphas").get<std::vector<double>>()) {
        const ExpansionPoint pt = capacity_expansion(alpha, L);
        r["expansion"].push_back(json{{"alpha", alpha},
                                      {"value", pt.value},
                                      {"tail", g.tail_bound * alpha},
                                      {"remainder_order", pt.remainder_order},
                                      {"hyx_asymptote", hyx_asymptote(alpha, L)},
                                      {"epsilon2_bound", epsilon2_bound(alpha, std::min<std::size_t>(L, 200))}});
    }
    return r;
}

json law_results(const json& p) {
    const BitWord x = BitWord::from_string(p.at("x").get<std::string>());
    const double alpha = p.at("alpha");
    if (p.contains("y")) {
        const BitWord y = BitWord::from_string(p.at("y").get<std::string>());
        return json{{"p", channel_law(x, y, alpha)}};
    }
    const OutputDistribution dist = output_distribution(x, alpha);
    double total = 0.0, h = 0.0;
    for (const auto& [y, q] : dist.entries) {
        total += q;
        h += nplog2p(q);
    }
    json r{{"support", dist.entries.size()}, {"total_prob", total}, {"h_y_given_x", h}};
    if (dist.entries.size() <= 256) {
        json ent = json::array();
        for (const auto& [y, q] : dist.entries) ent.push_back(json{{"y", y.to_string()}, {"p", q}});
        r["entries"] = std::move(ent);
    }
    return r;
}

InputLaw law_from_params(const json& p) {
    const std::size_t n = p.at("n");
    const std::string kind = p.at("kind");
    if (kind == "iid") return InputLaw::iid(n, p.at("p1"));
    if (kind == "markov") return InputLaw::markov(n, p.at("p01"), p.at("p10"));
    throw std::invalid_argument("unknown input-law kind: " + kind);
}

json mi_results(const json& p) {
    const MIResult r = mutual_information(law_from_params(p), p.at("alpha"));
    const double decomposition =
        r.h_y - r.h_ab + r.h_ab_given_xyk + r.h_k_given_xy;
    return json{{"h_y", r.h_y},
                {"h_y_given_x", r.h_y_given_x},
                {"h_ab", r.h_ab},
                {"h_ab_given_xyk", r.h_ab_given_xyk},
                {"h_k_given_xy", r.h_k_given_xy},
                {"mutual_information", r.mutual_information},
                {"per_symbol", r.mutual_information / double(r.n)},
                {"residual_direct", r.mutual_information - (r.h_y - r.h_y_given_x)},
                {"residual_decomposition", r.mutual_information - decomposition}};
}

json ba_results(const json& p) {
    const BaTrace t =
        blahut_arimoto(p.at("n"), p.at("alpha"), p.at("tol"), p.at("max_iter"));
    return json{{"cn", t.cn},
                {"certified_upper", t.certified_upper},
                {"gap", t.gap},
                {"iterations", t.iterations},
                {"converged", t.converged},
                {"trace", t.values},
                {"input_law", t.input_law}};
}

McConfig mc_config_from(const json& p) {
    McConfig cfg;
    cfg.alpha = p.at("alpha");
    cfg.n = p.at("n");
    cfg.trials = p.at("trials");
    cfg.seed = p.at("seed");
    cfg.budget = p.value("budget", std::uint64_t(1'000'000'000));
    cfg.workers = p.value("workers", std::size_t(0));
    return cfg;
}

json mc_results(const json& p) {
    const std::string est = p.at("estimator");
    const McConfig cfg = mc_config_from(p);
    if (est == "ab_entropy") return estimate_json(estimate_ab_entropy_rate(cfg));
    if (est == "output_length") return estimate_json(estimate_output_length(cfg));
    if (est == "zv") {
        const ZvStats s = estimate_zv_stats(cfg);
        return json{{"z1v0", estimate_json(s.z1v0)},
                    {"z1v1", estimate_json(s.z1v1)},
                    {"bound_3alpha2", 3.0 * cfg.alpha * cfg.alpha}};
    }
    if (est == "boundary") return estimate_json(estimate_boundary_ambiguity(cfg));
    if (est == "log_run") {
        const std::string mode = p.value("mode", std::string("bernoulli_half"));
        InputMode m = InputMode::bernoulli_half;
        if (mode == "all_zeros") m = InputMode::all_zeros;
        else if (mode == "alternating") m = InputMode::alternating;
        else if (mode != "bernoulli_half") throw std::invalid_argument("unknown mode: " + mode);
        return estimate_json(estimate_length_biased_log_run(cfg, m));
    }
    throw std::invalid_argument("unknown estimator: " + est);
}

json sweep_results(const json& p) {
    const std::vector<double> alphas = p.at("alphas");
    const std::vector<std::size_t> n_list = p.at("n_list");
    const std::size_t L = p.at("L");
    const double tol = p.at("tol");
    const std::size_t max_iter = p.at("max_iter");
    const std::size_t mc_n = p.at("mc_n");
    const std::size_t mc_trials = p.at("mc_trials");
    const std::uint64_t seed = p.at("seed");

    const double nan = std::nan("");
    const SeriesValue g = g1(L);
    json rows = json::array();
    for (std::size_t row = 0; row < alphas.size(); ++row) {
        const double alpha = alphas[row];
        json cell{{"alpha", alpha}};
        std::string status = "ok";
        try {
            cell["expansion"] = capacity_expansion(alpha, L).value;
            cell["tail"] = g.tail_bound * alpha;
        } catch (const std::exception&) {
            cell["expansion"] = nan;
            cell["tail"] = nan;
            status = "fail:expansion";
        }
        double cmin = std::numeric_limits<double>::infinity();
        bool ba_ok = true;
        for (const std::size_t n : n_list) {
            try {
                cmin = std::min(cmin, blahut_arimoto(n, alpha, tol, max_iter).certified_upper);
            } catch (const std::exception&) {
                ba_ok = false;
            }
        }
        cell["c_min_upper"] = ba_ok && std::isfinite(cmin) ? cmin : nan;
        if (!ba_ok && status == "ok") status = "fail:ba";
        json rates = json::object();
        for (const std::size_t n : n_list) {
            double v = nan;
            try {
                v = mutual_information(InputLaw::iid(n, 0.5), alpha).mutual_information / double(n);
            } catch (const std::exception&) {
                if (status == "ok") status = "fail:mi";
            }
            rates["n" + std::to_string(n)] = v;
        }
        cell["rate_iid"] = std::move(rates);
        std::string mc_status = "skip";
        if (mc_trials > 0) {
            try {
                McConfig cfg;
                cfg.alpha = alpha;
                cfg.n = mc_n;
                cfg.trials = mc_trials;
                cfg.seed = derive_seed(seed, row);
                const Estimate ab = estimate_ab_entropy_rate(cfg);
                const Estimate len = estimate_output_length(cfg);
                const double ab_target = binary_entropy(alpha) + alpha;
                mc_status = "ok";
                if (std::abs(ab.mean - ab_target) > 5.0 * ab.std_error) mc_status = "fail:ab_entropy";
                else if (std::abs(len.mean - alpha) > 5.0 * len.std_error) mc_status = "fail:output_length";
            } catch (const std::exception&) {
                mc_status = "fail:mc";
            }
        }
        cell["mc_status"] = mc_status;
        if (status != "ok" && mc_status == "skip") cell["mc_status"] = status;
        rows.push_back(std::move(cell));
    }
    return json{{"rows", std::move(rows)}};
}

// failed cells arrive as JSON null (NaN is not representable in JSON)
std::string csv_num(const json& v) { return v.is_number() ? fmt(v.get<double>()) : "nan"; }

std::string sweep_csv(const json& p, const json& results) {
    const std::vector<std::size_t> n_list = p.at("n_list");
    std::ostringstream csv;
    csv << "# syncap-csv v1\n";
    csv << "alpha,expansion,tail,c_min_upper";
    for (const std::size_t n : n_list) csv << ",rate_iid_n" << n;
    csv << ",mc_status\n";
    for (const json& cell : results.at("rows")) {
        csv << csv_num(cell.at("alpha")) << ',' << csv_num(cell.at("expansion")) << ','
            << csv_num(cell.at("tail")) << ',' << csv_num(cell.at("c_min_upper"));
        for (const std::size_t n : n_list)
            csv << ',' << csv_num(cell.at("rate_iid").at("n" + std::to_string(n)));
        csv << ',' << cell.at("mc_status").get<std::string>() << '\n';
    }
    return csv.str();
}

json replay_dispatch(const std::string& command, const json& params) {
    if (command == "series") return series_results(params);
    if (command == "law") return law_results(params);
    if (command == "mi") return mi_results(params);
    if (command == "ba") return ba_results(params);
    if (command == "mc") return mc_results(params);
    if (command == "sweep") return sweep_results(params);
    throw std::invalid_argument("replay: unknown command in record: " + command);
}

// ---- config file: flat key=value defaults, command line wins --------------

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read config file " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) +
                                                     ": empty key");
        const std::string flag = "--" + key;
        const bool present = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!present) args.push_back(flag + "=" + value);
    }
    return args;
}

struct Common {
    bool json_out = false;
    std::string out_dir;
    std::string config;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_flag("--json", c.json_out, "emit the full run record as JSON on stdout");
    cmd->add_option("--out", c.out_dir, "results directory; appends a record to runs.jsonl");
    cmd->add_option("--seed", c.seed, "root seed for seeded computations");
    cmd->add_option("--config", c.config, "flat key=value defaults (command line wins)");
}

json make_record(const std::string& command, json params, json results) {
    return json{{"command", command},
                {"params", std::move(params)},
                {"results", std::move(results)},
                {"meta", make_meta()}};
}

void emit(std::ostream& out, const Common& c, const json& record, const std::string& text) {
    if (!c.out_dir.empty()) persist(c.out_dir, record);
    if (c.json_out) out << record.dump(2) << "\n";
    else out << text;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"capacity toolkit for the binary random-insertion channel"};
    app.require_subcommand(1);

    struct {
        Common c;
        std::size_t L = 1000;
        std::vector<double> alphas;
    } se;
    CLI::App* cmd_series = app.add_subcommand("series", "series constants and capacity expansion");
    cmd_series->add_option("--L", se.L, "truncation level")->check(CLI::PositiveNumber);
    cmd_series->add_option("--alpha", se.alphas, "expansion evaluation points")->delimiter(',');
    add_common(cmd_series, se.c);

    struct {
        Common c;
        std::string x, y;
        double alpha = 0.0;
    } la;
    CLI::App* cmd_law = app.add_subcommand("law", "exact channel law P(y|x)");
    cmd_law->add_option("--x", la.x, "input bit string")->required();
    cmd_law->add_option("--y", la.y, "output bit string; omit for the full distribution of x");
    cmd_law->add_option("--alpha", la.alpha, "insertion probability")->required();
    add_common(cmd_law, la.c);

    struct {
        Common c;
        std::size_t n = 1;
        double alpha = 0.0;
        double iid_p1 = 0.5;
        std::vector<double> markov;
    } mi;
    CLI::App* cmd_mi = app.add_subcommand("mi", "exact mutual information and its decomposition");
    cmd_mi->add_option("--n", mi.n, "blocklength")->required()->check(CLI::PositiveNumber);
    cmd_mi->add_option("--alpha", mi.alpha, "insertion probability")->required();
    CLI::Option* oi = cmd_mi->add_option("--iid", mi.iid_p1, "iid input law with P(x=1)=p");
    cmd_mi->add_option("--markov", mi.markov, "markov input law: p01 p10")
        ->expected(2)
        ->delimiter(',')
        ->excludes(oi);
    add_common(cmd_mi, mi.c);

    struct {
        Common c;
        std::size_t n = 1;
        double alpha = 0.0;
        double tol = 1e-6;
        std::size_t max_iter = 2000;
    } ba;
    CLI::App* cmd_ba = app.add_subcommand("ba", "Blahut-Arimoto C_n with certified gap");
    cmd_ba->add_option("--n", ba.n, "blocklength")->required()->check(CLI::PositiveNumber);
    cmd_ba->add_option("--alpha", ba.alpha, "insertion probability")->required();
    cmd_ba->add_option("--tol", ba.tol, "convergence gap tolerance in bits");
    cmd_ba->add_option("--max-iter", ba.max_iter, "iteration cap")->check(CLI::PositiveNumber);
    add_common(cmd_ba, ba.c);

    struct {
        Common c;
        std::string estimator;
        double alpha = 0.0;
        std::size_t n = 100000;
        std::size_t trials = 10;
        std::uint64_t budget = 1'000'000'000;
        std::size_t workers = 0;
        std::string mode = "bernoulli_half";
    } mc;
    CLI::App* cmd_mc = app.add_subcommand("mc", "seeded Monte Carlo lemma checks");
    cmd_mc->add_option("--estimator", mc.estimator, "which estimator to run")
        ->required()
        ->check(CLI::IsMember({"ab_entropy", "output_length", "zv", "boundary", "log_run"}));
    cmd_mc->add_option("--alpha", mc.alpha, "insertion probability")->required();
    cmd_mc->add_option("--n", mc.n, "blocklength per trial")->check(CLI::PositiveNumber);
    cmd_mc->add_option("--trials", mc.trials, "number of trials")->check(CLI::PositiveNumber);
    cmd_mc->add_option("--budget", mc.budget, "cap on n*trials");
    cmd_mc->add_option("--workers", mc.workers, "worker threads (0 = serial)");
    cmd_mc->add_option("--mode", mc.mode, "log_run input mode")
        ->check(CLI::IsMember({"bernoulli_half", "all_zeros", "alternating"}));
    add_common(cmd_mc, mc.c);

    struct {
        Common c;
        std::vector<double> alphas;
        std::vector<std::size_t> n_list{1, 2, 3, 4};
        std::size_t L = 1000;
        double tol = 1e-6;
        std::size_t max_iter = 500;
        std::size_t mc_n = 50000;
        std::size_t mc_trials = 0;
    } sw;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "alpha-grid comparison artifacts (CSV + JSON)");
    cmd_sweep->add_option("--alpha", sw.alphas, "alpha grid, strictly increasing")
        ->required()
        ->delimiter(',');
    cmd_sweep->add_option("--n-list", sw.n_list, "blocklengths for BA bounds and iid rates")
        ->delimiter(',');
    cmd_sweep->add_option("--L", sw.L, "series truncation")->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--tol", sw.tol, "BA gap tolerance");
    cmd_sweep->add_option("--max-iter", sw.max_iter, "BA iteration cap")->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--mc-n", sw.mc_n, "MC check blocklength");
    cmd_sweep->add_option("--mc-trials", sw.mc_trials, "MC check trials (0 = skip MC column)");
    add_common(cmd_sweep, sw.c);

    struct {
        Common c;
        std::string in;
        long long index = -1;
    } rp;
    CLI::App* cmd_replay = app.add_subcommand("replay", "re-run persisted records and compare");
    cmd_replay->add_option("--in", rp.in, "runs.jsonl to replay")->required();
    cmd_replay->add_option("--index", rp.index, "replay a single record (default: all)");
    add_common(cmd_replay, rp.c);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = apply_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (app.got_subcommand(cmd_series)) {
            json params{{"L", se.L}, {"alphas", se.alphas}};
            const json results = series_results(params);
            std::ostringstream text;
            text << "series L=" << se.L << "\n";
            for (const char* key : {"g1", "a1", "e_log_l0"})
                text << "  " << key << " = " << fmt(results[key]["value"].get<double>())
                     << "  (tail <= " << fmt(results[key]["tail_bound"].get<double>()) << ")\n";
            for (const json& pt : results["expansion"])
                text << "  alpha=" << fmt(pt["alpha"].get<double>())
                     << "  expansion=" << fmt(pt["value"].get<double>())
                     << "  tail=" << fmt(pt["tail"].get<double>())
                     << "  hyx=" << fmt(pt["hyx_asymptote"].get<double>())
                     << "  eps2<=" << fmt(pt["epsilon2_bound"].get<double>()) << "\n";
            emit(out, se.c, make_record("series", params, results), text.str());
            return 0;
        }

        if (app.got_subcommand(cmd_law)) {
            json params{{"x", la.x}, {"alpha", la.alpha}};
            if (cmd_law->count("--y")) params["y"] = la.y;
            const json results = law_results(params);
            std::ostringstream text;
            if (results.contains("p"))
                text << "P(y|x) = " << fmt(results["p"].get<double>()) << "\n";
            else
                text << "support=" << results["support"].get<std::size_t>()
                     << "  total_prob=" << fmt(results["total_prob"].get<double>())
                     << "  H(Y|x)=" << fmt(results["h_y_given_x"].get<double>()) << "\n";
            emit(out, la.c, make_record("law", params, results), text.str());
            return 0;
        }

        if (app.got_subcommand(cmd_mi)) {
            json params{{"n", mi.n}, {"alpha", mi.alpha}};
            if (!mi.markov.empty()) {
                params["kind"] = "markov";
                params["p01"] = mi.markov[0];
                params["p10"] = mi.markov[1];
            } else {
                params["kind"] = "iid";
                params["p1"] = mi.iid_p1;
            }
            const json results = mi_results(params);
            std::ostringstream text;
            text << "mi n=" << mi.n << " alpha=" << fmt(mi.alpha) << "\n";
            for (const char* key : {"h_y", "h_y_given_x", "h_ab", "h_ab_given_xyk", "h_k_given_xy",
                                    "mutual_information", "per_symbol"})
                text << "  " << key << " = " << fmt(results[key].get<double>()) << "\n";
            text << "  residuals: direct=" << fmt(results["residual_direct"].get<double>())
                 << " decomposition=" << fmt(results["residual_decomposition"].get<double>())
                 << "\n";
            emit(out, mi.c, make_record("mi", params, results), text.str());
            return 0;
        }

        if (app.got_subcommand(cmd_ba)) {
            json params{{"n", ba.n}, {"alpha", ba.alpha}, {"tol", ba.tol},
                        {"max_iter", ba.max_iter}};
            const json results = ba_results(params);
            // running min over previously persisted C_n records for this alpha
            double running = results["certified_upper"].get<double>();
            std::size_t prior = 0;
            if (!ba.c.out_dir.empty()) {
                const fs::path path = fs::path(ba.c.out_dir) / "runs.jsonl";
                if (fs::exists(path))
                    for (const json& rec : load_records(path.string()))
                        if (rec.value("command", "") == "ba" &&
                            rec.at("params").value("alpha", -1.0) == ba.alpha) {
                            running = std::min(running,
                                               rec.at("results").at("certified_upper").get<double>());
                            ++prior;
                        }
            }
            std::ostringstream text;
            text << "ba n=" << ba.n << " alpha=" << fmt(ba.alpha) << " tol=" << fmt(ba.tol) << "\n"
                 << "  C_n=" << fmt(results["cn"].get<double>())
                 << "  certified_upper=" << fmt(results["certified_upper"].get<double>())
                 << "  gap=" << fmt(results["gap"].get<double>())
                 << "  iterations=" << results["iterations"].get<std::size_t>()
                 << "  converged=" << (results["converged"].get<bool>() ? "yes" : "no") << "\n"
                 << "  running_min_upper=" << fmt(running) << "  (over " << prior
                 << " prior records)\n";
            json record = make_record("ba", params, results);
            if (ba.c.json_out) {
                json shown = record;
                shown["context"] = json{{"running_min_upper", running}, {"prior_records", prior}};
                if (!ba.c.out_dir.empty()) persist(ba.c.out_dir, record);
                out << shown.dump(2) << "\n";
            } else {
                emit(out, ba.c, record, text.str());
            }
            if (!results["converged"].get<bool>()) {
                err << "warning: not converged after " << results["iterations"].get<std::size_t>()
                    << " iterations (gap " << fmt(results["gap"].get<double>()) << " bits)\n";
                return 2;
            }
            return 0;
        }

        if (app.got_subcommand(cmd_mc)) {
            json params{{"estimator", mc.estimator}, {"alpha", mc.alpha}, {"n", mc.n},
                        {"trials", mc.trials}, {"seed", mc.c.seed}, {"budget", mc.budget},
                        {"workers", mc.workers}};
            if (mc.estimator == "log_run") params["mode"] = mc.mode;
            const json results = mc_results(params);
            std::ostringstream text;
            text << "mc " << mc.estimator << " alpha=" << fmt(mc.alpha) << " n=" << mc.n
                 << " trials=" << mc.trials << " seed=" << mc.c.seed << "\n";
            if (mc.estimator == "zv") {
                for (const char* key : {"z1v0", "z1v1"})
                    text << "  " << key << ": mean=" << fmt(results[key]["mean"].get<double>())
                         << " std_error=" << fmt(results[key]["std_error"].get<double>())
                         << " samples=" << results[key]["samples"].get<std::uint64_t>() << "\n";
                text << "  bound 3*alpha^2 = " << fmt(results["bound_3alpha2"].get<double>())
                     << "\n";
            } else {
                text << "  mean=" << fmt(results["mean"].get<double>())
                     << " std_error=" << fmt(results["std_error"].get<double>())
                     << " samples=" << results["samples"].get<std::uint64_t>() << "\n";
            }
            emit(out, mc.c, make_record("mc", params, results), text.str());
            return 0;
        }

        if (app.got_subcommand(cmd_sweep)) {
            for (std::size_t i = 0; i + 1 < sw.alphas.size(); ++i)
                if (!(sw.alphas[i] < sw.alphas[i + 1]))
                    throw std::invalid_argument("sweep: alpha grid must be strictly increasing");
            for (const double a : sw.alphas)
                if (!(a > 0.0 && a < 1.0))
                    throw std::invalid_argument("sweep: alpha grid entries must lie in (0, 1)");
            if (sw.c.out_dir.empty())
                throw std::invalid_argument("sweep: --out directory is required");
            json params{{"alphas", sw.alphas}, {"n_list", sw.n_list}, {"L", sw.L},
                        {"tol", sw.tol},       {"max_iter", sw.max_iter}, {"mc_n", sw.mc_n},
                        {"mc_trials", sw.mc_trials}, {"seed", sw.c.seed}};
            const json results = sweep_results(params);
            const std::string csv = sweep_csv(params, results);
            fs::create_directories(sw.c.out_dir);
            {
                std::ofstream f(fs::path(sw.c.out_dir) / "sweep.csv", std::ios::trunc);
                f << csv;
            }
            json record = make_record("sweep", params, results);
            {
                std::ofstream f(fs::path(sw.c.out_dir) / "sweep.json", std::ios::trunc);
                f << record.dump(2) << "\n";
            }
            std::ostringstream text;
            text << "sweep: " << sw.alphas.size() << " alphas -> " << sw.c.out_dir
                 << "/sweep.csv, " << sw.c.out_dir << "/sweep.json\n";
            emit(out, sw.c, record, text.str());
            return 0;
        }

        if (app.got_subcommand(cmd_replay)) {
            const std::vector<json> recs = load_records(rp.in);
            std::size_t checked = 0, mismatched = 0;
            for (std::size_t i = 0; i < recs.size(); ++i) {
                if (rp.index >= 0 && std::size_t(rp.index) != i) continue;
                const json& rec = recs[i];
                ++checked;
                const json fresh =
                    replay_dispatch(rec.at("command").get<std::string>(), rec.at("params"));
                if (fresh == rec.at("results")) {
                    out << "#" << i << " " << rec.at("command").get<std::string>() << " ok\n";
                } else {
                    ++mismatched;
                    out << "#" << i << " " << rec.at("command").get<std::string>()
                        << " MISMATCH\n";
                }
            }
            if (rp.index >= 0 && checked == 0)
                throw std::invalid_argument("replay: index out of range");
            if (mismatched) {
                err << "replay: " << mismatched << " of " << checked << " records mismatched\n";
                return 2;
            }
            out << "replay OK (" << checked << " records)\n";
            return 0;
        }

        return 0;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    } catch (const GuardError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace syncap
