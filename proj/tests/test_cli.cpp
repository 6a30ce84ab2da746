#include <filesystem>

#include "doctest.h"

#include "tbembed/cli.hpp"
#include "tbembed/rng.hpp"

using namespace tbembed;
using namespace tbembed::cli;

namespace {

ExperimentConfig small_config() {
    return parse_config(R"(
        cipher = reduced
        reduced_m = 3
        reduced_b = 4
        reduced_rounds = 3
        matrices = 60
        baseline_trials = 2000
        validation_runs = 200
        seed = 99
    )");
}

}  // namespace

TEST_CASE("key-value parsing") {
    const auto kv = parse_key_values("# comment\n  a = 1 \nb=two # trailing\n\n");
    CHECK(kv.size() == 2);
    CHECK(kv.at("a") == "1");
    CHECK(kv.at("b") == "two");
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(parse_config("colour = blue"), ConfigError);
    CHECK_THROWS_AS(parse_config("cipher = des"), ConfigError);
    CHECK_THROWS_AS(parse_config("matrices = many"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
    CHECK_THROWS_AS(parse_config("cipher = reduced").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config("seed = 1\nsignificance = 2").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config("seed = 1\npolicy = low-rank").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config("seed = 1\ncipher = serpent-linear\nembedding = alpha").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config("seed = 1\nreduced_m = 2\nreduced_b = 3").validate(), ConfigError);
    CHECK_NOTHROW(small_config().validate());
}

TEST_CASE("config echo") {
    const auto j = small_config().to_json();
    CHECK(j["seed"] == 99);
    CHECK(j["cipher"] == "reduced");
    CHECK(j["policy"] == "uniform-admissible");
}

TEST_CASE("identical seeds give identical reports") {
    auto cfg = small_config();
    const auto a = strip_timing(run_distinguisher(cfg));
    const auto b = strip_timing(run_distinguisher(cfg));
    CHECK(a == b);
    CHECK(a.contains("verdict"));
    CHECK(a["validation"]["ok"] == true);

    cfg.threads = 3;
    auto c = strip_timing(run_distinguisher(cfg));
    c.erase("estimated_memory_bytes");
    c["config"].erase("threads");
    auto a2 = a;
    a2.erase("estimated_memory_bytes");
    a2["config"].erase("threads");
    CHECK(a2 == c);

    cfg.threads = 1;
    cfg.seed = 100;
    CHECK(strip_timing(run_distinguisher(cfg))["ranks"] != a["ranks"]);
}

TEST_CASE("key modes and policies run") {
    for (const char* extra : {"key_mode = related", "key_mode = independent", "policy = uniform-in-T",
                              "policy = low-rank\nlow_rank_dim = 6", "embedding = alpha"}) {
        CAPTURE(extra);
        auto cfg = small_config();
        for (const auto& [k, v] : parse_key_values(extra)) apply_setting(cfg, k, v);
        const auto r = run_distinguisher(cfg);
        CHECK(r["ranks"].size() == cfg.matrices * r["ranks_per_matrix"].get<std::size_t>());
    }
}

TEST_CASE("memory estimate covers the matrices") {
    const auto cfg = small_config();
    const auto p = embedding_for(cfg);
    const std::size_t rows = 21;
    const std::size_t matrix_bytes = rows * algebra::words_for(p.s()) * 8;
    CHECK(estimate_memory_bytes(cfg, p, rows, rows) >= cfg.matrices * matrix_bytes);

    auto tight = cfg;
    tight.cipher = CipherKind::aes128;
    tight.memory_limit_mb = 1;
    CHECK_THROWS_AS(run_distinguisher(tight), ConfigError);
}

TEST_CASE("matrix file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "tbembed_roundtrip.bin";
    SplitMix64 rng(3);
    algebra::BitMatrix m(37, 130);
    for (std::size_t i = 0; i < m.rows(); ++i) m.set_row(i, rng.bits(130));
    write_matrix(path, m);
    CHECK(std::filesystem::file_size(path) == 8 + 16 + 37 * 3 * 8);
    CHECK(read_matrix(path) == m);
    std::filesystem::remove(path);
    CHECK_THROWS(read_matrix(path));
}

TEST_CASE("verification suites") {
    CHECK_FALSE(parse_suite("everything"));
    CHECK(parse_suite("bounds") == Suite::bounds);
    for (auto s : {Suite::orders, Suite::counterexamples, Suite::rankstats, Suite::extend, Suite::bounds}) {
        const auto items = run_verifications(s);
        CHECK_FALSE(items.empty());
        CHECK(all_passed(items));
    }
    VerifyOptions quick;
    quick.long_checks = false;
    const auto dims = run_verifications(Suite::dims, quick);
    CHECK(all_passed(dims));
    const auto report = verification_report(dims);
    CHECK(report.dump().find("aes-alpha") != std::string::npos);
}

TEST_CASE("rank distribution table") {
    const auto t = rank_distribution_table(2, 2, 4, 5000, 1, 1);
    CHECK(t["dim_t"] == 7);
    double total = 0;
    for (const auto& row : t["rows"]) total += row["monte_carlo_fraction"].get<double>();
    CHECK(total == doctest::Approx(1.0));
}
