#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qaoa/harness.hpp"

using namespace qaoa;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("qaoa_harness_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// header + rows -> map from (hash, strategy, n, p) to named cell values
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
};

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    std::istringstream head(line);
    std::string field;
    while (std::getline(head, field, ',')) table.header.push_back(field);
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::map<std::string, std::string> cells;
        for (const auto& name : table.header) {
            std::getline(row, field, ',');
            cells[name] = field;
        }
        table.rows.push_back(std::move(cells));
    }
    return table;
}

}  // namespace

TEST_CASE("config round trip is byte-identical") {
    ExperimentConfig c;
    c.recipe = "fig4";
    c.sizes = {16, 32, 64};
    c.depths = {1, 2, 3};
    c.instances_per_size = 3;
    c.seed = 99;
    c.engine = "lightcone";
    c.backend = "tn";
    c.outdir = "out/dir";
    c.allow_large = true;
    c.budget = 123456.0;

    std::ostringstream first;
    write_config(first, c);
    std::istringstream in(first.str());
    const ExperimentConfig back = parse_config(in);
    std::ostringstream second;
    write_config(second, back);
    CHECK(first.str() == second.str());
}

TEST_CASE("config parsing errors") {
    std::istringstream bad_key("recipe = fig1\nwat = 3\n");
    CHECK_THROWS_WITH(parse_config(bad_key), Catch::Matchers::ContainsSubstring("unknown key"));
    std::istringstream bad_int("sizes = 16, banana\n");
    CHECK_THROWS_AS(parse_config(bad_int), std::runtime_error);
    std::istringstream no_eq("recipe fig1\n");
    CHECK_THROWS_WITH(parse_config(no_eq), Catch::Matchers::ContainsSubstring("line 1"));
    std::istringstream commented("# hi\nrecipe = fig2 # inline\n");
    CHECK(parse_config(commented).recipe == "fig2");
}

TEST_CASE("records CSV schema is stable") {
    CHECK(std::string(kRecordsCsvHeader) ==
          "graph_hash,strategy,n,p,expectation,cut_fraction,approx_ratio,gw_expected,"
          "best_cut_prob,seed,wall_ms");
    ResultRecord r;
    r.graph_hash = "abc";
    r.strategy = "gw-only";
    r.n = 16;
    r.p = 0;
    r.gw_expected = 19.5;
    r.seed = 7;
    CHECK(record_csv_row(r) == "abc,gw-only,16,0,,,,19.5,,7,");
    r.wall_ms = 12;
    r.expectation = 0.5;
    CHECK(record_csv_row(r) == "abc,gw-only,16,0,0.5,,,19.5,,7,12");
}

TEST_CASE("feasibility gate") {
    CHECK_NOTHROW(check_feasible(16, 2, 3, "dense", "dense", false));
    CHECK_THROWS_AS(check_feasible(30, 1, 3, "dense", "dense", false), std::invalid_argument);
    CHECK_NOTHROW(check_feasible(64, 2, 3, "lightcone", "dense", false));
    CHECK_THROWS_AS(check_feasible(64, 3, 3, "lightcone", "dense", false),
                    std::invalid_argument);
    CHECK_NOTHROW(check_feasible(64, 3, 3, "lightcone", "tn", false));
    CHECK_THROWS_AS(check_feasible(64, 4, 3, "lightcone", "tn", false), std::invalid_argument);
    CHECK_NOTHROW(check_feasible(64, 4, 3, "lightcone", "tn", true));
    CHECK_THROWS_WITH(check_feasible(256, 3, 3, "lightcone", "tn", false),
                      Catch::Matchers::ContainsSubstring("allow_large"));
    CHECK_NOTHROW(check_feasible(256, 3, 3, "lightcone", "tn", true));
    CHECK_THROWS_AS(check_feasible(1 << 21, 1, 3, "lightcone", "tn", true),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_feasible(16, 1, 3, "warp", "dense", false), std::invalid_argument);
}

TEST_CASE("fig1 recipe") {
    ExperimentConfig c;
    c.recipe = "fig1";
    c.sizes = {16};
    c.depths = {1, 2};
    c.instances_per_size = 2;
    c.seed = 5;
    c.outdir = fresh_dir("fig1a").string();

    const auto records = run_recipe(c);
    CHECK(records.size() == 8);  // 2 types x 2 instances x 2 depths
    for (const auto& r : records) CHECK(r.error.empty());

    const auto random_csv = parse_csv(slurp(fs::path(c.outdir) / "fig1_random.csv"));
    const auto bip_csv = parse_csv(slurp(fs::path(c.outdir) / "fig1_bipartite.csv"));
    const auto ftree_csv = parse_csv(slurp(fs::path(c.outdir) / "fig1_ftree.csv"));
    REQUIRE(random_csv.rows.size() == 4);
    REQUIRE(bip_csv.rows.size() == 4);
    REQUIRE(ftree_csv.rows.size() == 2);

    std::map<int, double> ftree;
    for (const auto& row : ftree_csv.rows)
        ftree[std::stoi(row.at("p"))] = std::stod(row.at("f_tree"));
    for (const auto* csv : {&random_csv, &bip_csv}) {
        for (const auto& row : csv->rows) {
            const double ratio = std::stod(row.at("approx_ratio"));
            CHECK(ratio >= ftree.at(std::stoi(row.at("p"))) - 1e-9);
            CHECK(!row.at("best_cut_prob").empty());
            CHECK(row.at("wall_ms").empty());
        }
    }

    SECTION("rerun emits identical bytes") {
        ExperimentConfig c2 = c;
        c2.outdir = fresh_dir("fig1b").string();
        run_recipe(c2);
        for (const char* name : {"fig1_random.csv", "fig1_bipartite.csv", "fig1_ftree.csv"})
            CHECK(slurp(fs::path(c.outdir) / name) == slurp(fs::path(c2.outdir) / name));
    }
}

TEST_CASE("fig2 recipe: ascent never loses to the tree start") {
    ExperimentConfig c;
    c.recipe = "fig2";
    c.sizes = {14};
    c.depths = {1};
    c.ascend_budget = 80;
    c.seed = 3;
    c.outdir = fresh_dir("fig2").string();

    const auto records = run_recipe(c);
    REQUIRE(records.size() == 4);
    std::map<std::string, double> by_key;
    for (const auto& r : records) {
        REQUIRE(r.error.empty());
        by_key[r.graph_hash + "/" + r.strategy] = *r.expectation;
    }
    for (const auto& [key, value] : by_key) {
        if (key.find("standard-ascend") == std::string::npos) continue;
        const std::string tree_key =
            key.substr(0, key.find('/')) + "/standard-tree";
        CHECK(value >= by_key.at(tree_key) - 1e-12);
    }
}

TEST_CASE("fig3 recipe: the alpha* point tops the p=0 sweep") {
    ExperimentConfig c;
    c.recipe = "fig3-p0-sweep";
    c.sizes = {16};
    c.depths = {1};
    c.sweep_points = 16;
    c.seed = 11;
    c.outdir = fresh_dir("fig3").string();

    run_recipe(c);
    const auto sweep = parse_csv(slurp(fs::path(c.outdir) / "fig3_sweep.csv"));
    double p0_first = -1.0, p0_max = -1.0;
    bool first = true;
    for (const auto& row : sweep.rows) {
        if (std::stoi(row.at("p")) != 0) continue;
        const double value = std::stod(row.at("expectation"));
        if (first) {
            p0_first = value;  // the alpha* row leads the block
            first = false;
        }
        p0_max = std::max(p0_max, value);
    }
    CHECK(p0_first >= p0_max - 1e-9);
}

TEST_CASE("fig4 recipe") {
    ExperimentConfig c;
    c.recipe = "fig4";
    c.sizes = {16};
    c.depths = {1, 2};
    c.instances_per_size = 1;
    c.seed = 21;
    c.outdir = fresh_dir("fig4").string();

    const auto records = run_recipe(c);
    int gw_rows = 0, standard_rows = 0, warm_rows = 0;
    for (const auto& r : records) {
        REQUIRE(r.error.empty());
        if (r.strategy == "gw-only") ++gw_rows;
        if (r.strategy == "standard-tree") ++standard_rows;
        if (r.strategy == "warmstart-tree") ++warm_rows;
        if (r.strategy != "gw-only") CHECK(r.gw_expected.has_value());
    }
    CHECK(gw_rows == 1);
    CHECK(standard_rows == 3);  // p = 0, 1, 2
    CHECK(warm_rows == 3);
    CHECK(fs::exists(fs::path(c.outdir) / "fig4_summary.txt"));
    const std::string summary = slurp(fs::path(c.outdir) / "fig4_summary.txt");
    CHECK(summary.find("n=16, p=2") != std::string::npos);
}

TEST_CASE("crash isolation: one failing cell does not sink the run") {
    ExperimentConfig c;
    c.recipe = "custom";
    c.sizes = {14};
    c.depths = {1, 12};  // no table entry at p = 12
    c.instances_per_size = 1;
    c.seed = 2;
    c.outdir = fresh_dir("iso").string();

    const auto records = run_recipe(c);
    REQUIRE(records.size() == 2);
    CHECK(records[0].error.empty());
    CHECK_FALSE(records[1].error.empty());

    const auto csv = parse_csv(slurp(fs::path(c.outdir) / "custom_records.csv"));
    CHECK(csv.rows.size() == 1);  // failed cell excluded from the CSV
    const std::string log = slurp(fs::path(c.outdir) / "custom_errors.log");
    CHECK(log.find("p=12") != std::string::npos);
}

TEST_CASE("unknown recipe is rejected") {
    ExperimentConfig c;
    c.recipe = "fig9";
    CHECK_THROWS_AS(run_recipe(c), std::invalid_argument);
}
