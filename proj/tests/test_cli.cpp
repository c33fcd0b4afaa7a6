#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "syncap/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = 0;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "syncap");
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = syncap::run_cli(int(argv.size()), argv.data(), o, e);
    return {code, o.str(), e.str()};
}

json results_of(const CliRun& r) { return json::parse(r.out).at("results"); }

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "syncap_cli_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("law: single probability and full distribution") {
    const auto r = cli({"law", "--x", "0", "--y", "0", "--alpha", "0.1", "--json"});
    REQUIRE(r.code == 0);
    CHECK(results_of(r).at("p").get<double>() == doctest::Approx(0.9).epsilon(1e-12));

    const auto t = cli({"law", "--x", "0", "--y", "00", "--alpha", "0.1"});
    REQUIRE(t.code == 0);
    CHECK(t.out.find("0.05") != std::string::npos);

    const auto d = cli({"law", "--x", "01", "--alpha", "0.1", "--json"});
    REQUIRE(d.code == 0);
    const json res = results_of(d);
    CHECK(res.at("support").get<std::size_t>() == 8);
    CHECK(res.at("total_prob").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.at("entries").size() == 8);
}

TEST_CASE("series: deterministic records and frozen numbers") {
    const auto r1 = cli({"series", "--L", "50", "--alpha", "0.01,0.02", "--json"});
    const auto r2 = cli({"series", "--L", "50", "--alpha", "0.01,0.02", "--json"});
    REQUIRE(r1.code == 0);
    json j1 = json::parse(r1.out), j2 = json::parse(r2.out);
    j1.erase("meta");
    j2.erase("meta"); // timestamps may differ; everything else must not
    CHECK(j1 == j2);

    const auto r = cli({"series", "--L", "10", "--json"});
    REQUIRE(r.code == 0);
    CHECK(results_of(r).at("g1").at("tail_bound").get<double>() == 0.0498046875);

    const auto d = cli({"series", "--alpha", "0.01", "--json"}); // default L = 1000
    const json pt = results_of(d).at("expansion").at(0);
    CHECK(pt.at("alpha").get<double>() == 0.01);
    CHECK(pt.at("value").get<double>() == doctest::Approx(0.93846245683).epsilon(1e-9));
    CHECK(pt.at("remainder_order").get<std::string>() == "O(alpha^(3/2-eps))");

    const auto deep = cli({"series", "--L", "1000", "--alpha", "0.01", "--json"});
    REQUIRE(deep.code == 0);
    const json dres = results_of(deep);
    CHECK(std::abs(dres.at("g1").at("value").get<double>() - 0.4901) <= 5e-4);
    CHECK(std::abs(dres.at("expansion").at(0).at("value").get<double>() - 0.938463) <= 1e-6);
}

TEST_CASE("mi: decomposition with closed residuals") {
    const auto r = cli({"mi", "--n", "2", "--alpha", "0.1", "--json"});
    REQUIRE(r.code == 0);
    const json res = results_of(r);
    CHECK(res.at("mutual_information").get<double>() == doctest::Approx(1.91).epsilon(1e-9));
    CHECK(res.at("per_symbol").get<double>() == doctest::Approx(0.955).epsilon(1e-9));
    CHECK(std::abs(res.at("residual_direct").get<double>()) <= 1e-9);
    CHECK(std::abs(res.at("residual_decomposition").get<double>()) <= 1e-9);

    // degenerate corners: one perfectly recoverable bit, and a silent channel
    const auto one = cli({"mi", "--n", "1", "--alpha", "0.1", "--iid", "0.5", "--json"});
    REQUIRE(one.code == 0);
    CHECK(results_of(one).at("mutual_information").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));
    const auto silent = cli({"mi", "--n", "4", "--alpha", "0", "--iid", "0.5", "--json"});
    REQUIRE(silent.code == 0);
    CHECK(results_of(silent).at("mutual_information").get<double>() ==
          doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("ba: convergence, context, non-convergence exit") {
    const auto r = cli({"ba", "--n", "1", "--alpha", "0.1", "--json"});
    REQUIRE(r.code == 0);
    const json full = json::parse(r.out);
    CHECK(full.at("results").at("cn").get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(full.at("results").at("converged").get<bool>());
    CHECK(full.at("context").at("prior_records").get<std::size_t>() == 0);

    const auto bad = cli({"ba", "--n", "4", "--alpha", "0.1", "--max-iter", "1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("not converged") != std::string::npos);

    // persisted runs feed the running minimum for the same alpha only
    const auto dir = fresh_dir("ba_context").string();
    const auto first = cli({"ba", "--n", "2", "--alpha", "0.1", "--json", "--out", dir});
    REQUIRE(first.code == 0);
    const double u2 = results_of(first).at("certified_upper").get<double>();
    CHECK(u2 < 1.0);

    const auto second = cli({"ba", "--n", "1", "--alpha", "0.1", "--json", "--out", dir});
    REQUIRE(second.code == 0);
    const json ctx = json::parse(second.out).at("context");
    CHECK(ctx.at("prior_records").get<std::size_t>() == 1);
    CHECK(ctx.at("running_min_upper").get<double>() == doctest::Approx(u2).epsilon(1e-12));
    CHECK(ctx.at("running_min_upper").get<double>() <
          results_of(second).at("certified_upper").get<double>());

    const auto other = cli({"ba", "--n", "1", "--alpha", "0.05", "--json", "--out", dir});
    REQUIRE(other.code == 0);
    CHECK(json::parse(other.out).at("context").at("prior_records").get<std::size_t>() == 0);
}

TEST_CASE("mc: record fields per estimator") {
    const auto r = cli({"mc", "--estimator", "output_length", "--alpha", "0.1", "--n", "2000",
                        "--trials", "4", "--seed", "3", "--json"});
    REQUIRE(r.code == 0);
    const json res = results_of(r);
    CHECK(res.at("samples").get<std::uint64_t>() == 4);
    CHECK(res.at("mean").get<double>() == doctest::Approx(0.1).epsilon(0.5));

    const auto z = cli({"mc", "--estimator", "zv", "--alpha", "0.01", "--n", "20000", "--trials",
                        "4", "--seed", "3", "--json"});
    REQUIRE(z.code == 0);
    const json zres = results_of(z);
    CHECK(zres.at("bound_3alpha2").get<double>() == doctest::Approx(3e-4).epsilon(1e-12));
    CHECK(zres.contains("z1v0"));
    CHECK(zres.contains("z1v1"));
}

TEST_CASE("exit codes: usage, guard, budget") {
    CHECK(cli({"series", "--L", "0"}).code == 1);
    CHECK(cli({"series", "--bogus"}).code == 1);
    CHECK(cli({"mc", "--alpha", "0.1"}).code == 1); // --estimator is required
    CHECK(cli({"mi", "--n", "2", "--alpha", "0.1", "--markov", "0.3"}).code == 1);
    CHECK(cli({"mi", "--n", "2", "--alpha", "0.1", "--iid", "0.3", "--markov", "0.3,0.4"}).code == 1);

    const auto g = cli({"mi", "--n", "9", "--alpha", "0.1"});
    CHECK(g.code == 3);
    CHECK(g.err.find("guard") != std::string::npos);

    const auto b = cli({"mc", "--estimator", "ab_entropy", "--alpha", "0.1", "--n", "2000000",
                        "--trials", "1000"});
    CHECK(b.code == 3);
    CHECK(b.err.find("budget") != std::string::npos);
}

TEST_CASE("sweep: stable artifacts and validation") {
    const fs::path d1 = fresh_dir("sweep1"), d2 = fresh_dir("sweep2");
    const std::vector<std::string> base{"sweep", "--alpha", "0.005,0.01", "--n-list", "1,2",
                                        "--L", "50", "--seed", "9"};
    auto with_out = [&](const fs::path& d) {
        auto a = base;
        a.push_back("--out");
        a.push_back(d.string());
        return a;
    };
    REQUIRE(cli(with_out(d1)).code == 0);
    REQUIRE(cli(with_out(d2)).code == 0);

    const std::string csv = slurp(d1 / "sweep.csv");
    CHECK(csv == slurp(d2 / "sweep.csv")); // byte-identical across reruns
    CHECK(csv.rfind("# syncap-csv v1\n", 0) == 0);
    CHECK(csv.find("alpha,expansion,tail,c_min_upper,rate_iid_n1,rate_iid_n2,mc_status") !=
          std::string::npos);
    CHECK(csv.find("\n0.005,") != std::string::npos);

    const json record = json::parse(slurp(d1 / "sweep.json"));
    CHECK(record.at("results").at("rows").size() == 2);

    CHECK(cli({"sweep", "--alpha", "0.01,0.005", "--out", d1.string()}).code == 1);
    CHECK(cli({"sweep", "--alpha", "0.01"}).code == 1); // --out is required
}

TEST_CASE("replay: reproduces records and flags tampering") {
    const fs::path dir = fresh_dir("replay");
    REQUIRE(cli({"mc", "--estimator", "output_length", "--alpha", "0.1", "--n", "1000", "--trials",
                 "4", "--seed", "3", "--out", dir.string()})
                .code == 0);
    REQUIRE(cli({"series", "--L", "20", "--alpha", "0.02", "--out", dir.string()}).code == 0);

    const fs::path runs = dir / "runs.jsonl";
    const auto ok = cli({"replay", "--in", runs.string()});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("replay OK (2 records)") != std::string::npos);

    // single-record replay by index
    CHECK(cli({"replay", "--in", runs.string(), "--index", "1"}).code == 0);
    CHECK(cli({"replay", "--in", runs.string(), "--index", "7"}).code == 1);

    // tamper with the stored mean and expect a mismatch
    std::vector<json> recs;
    {
        std::ifstream f(runs);
        std::string line;
        while (std::getline(f, line))
            if (!line.empty()) recs.push_back(json::parse(line));
    }
    REQUIRE(recs.size() == 2);
    recs[0]["results"]["mean"] = recs[0]["results"]["mean"].get<double>() + 0.125;
    {
        std::ofstream f(runs, std::ios::trunc);
        for (const auto& r : recs) f << r.dump() << "\n";
    }
    const auto bad = cli({"replay", "--in", runs.string()});
    CHECK(bad.code == 2);
    CHECK(bad.out.find("MISMATCH") != std::string::npos);
}

TEST_CASE("config file provides defaults, flags win") {
    const fs::path dir = fresh_dir("config");
    const fs::path cfg = dir / "defaults.cfg";
    {
        std::ofstream f(cfg);
        f << "# defaults for the series command\n"
          << "L = 10\n"
          << "alpha = 0.03\n";
    }
    const auto r = cli({"series", "--config", cfg.string(), "--json"});
    REQUIRE(r.code == 0);
    CHECK(results_of(r).at("g1").at("tail_bound").get<double>() == 0.0498046875); // L = 10
    CHECK(results_of(r).at("expansion").at(0).at("alpha").get<double>() == 0.03);

    const auto o = cli({"series", "--config", cfg.string(), "--L", "20", "--json"});
    REQUIRE(o.code == 0);
    // command line L beats the config value
    CHECK(results_of(o).at("g1").at("tail_bound").get<double>() ==
          doctest::Approx(584.0 / 4194304.0).epsilon(1e-15));

    CHECK(cli({"series", "--config", (dir / "missing.cfg").string()}).code == 1);
    {
        std::ofstream f(cfg, std::ios::trunc);
        f << "not a key value pair\n";
    }
    CHECK(cli({"series", "--config", cfg.string()}).code == 1);
}
