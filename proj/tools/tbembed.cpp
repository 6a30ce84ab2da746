#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tbembed/cli.hpp"
#include "tbembed/rng.hpp"

using namespace tbembed;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

void emit(const nlohmann::json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw cli::ConfigError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Space embeddings of translation-based block ciphers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cli::kToolVersion);

    auto* verify = app.add_subcommand("verify", "Check dimension, order, counting and bound claims");
    std::string suite = "all", verify_out;
    bool skip_long = false;
    verify->add_option("--suite", suite, "dims | orders | counterexamples | rankstats | extend | bounds | all");
    verify->add_flag("--skip-long", skip_long, "Skip the AES orbit dimension (about 20 s)");
    verify->add_option("-o,--output", verify_out, "Write the JSON report here");

    auto* dist = app.add_subcommand("distinguish", "Run the rank distinguisher from a config file");
    std::string config_path, dist_out, csv;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    dist->add_option("config", config_path, "Config file (key = value lines)")->required();
    dist->add_option("--set", overrides, "Override a config key: key=value");
    dist->add_option("--seed", seed, "Override the seed");
    dist->add_option("--threads", threads, "Worker threads");
    dist->add_option("-o,--output", dist_out, "Write the JSON report here");
    dist->add_option("--csv", csv, "Write per-matrix ranks as CSV");

    auto* rdist = app.add_subcommand("rank-dist", "Formula, exhaustive and Monte Carlo rank fractions");
    unsigned rm = 2, rb = 2, rk = 4, rthreads = 1;
    std::size_t trials = 100000;
    std::uint64_t rseed = 1;
    rdist->add_option("--m", rm, "Brick size")->check(CLI::Range(2, 8));
    rdist->add_option("--b", rb, "Number of bricks")->check(CLI::Range(1, 64));
    rdist->add_option("--k", rk, "Matrix rows");
    rdist->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    rdist->add_option("--seed", rseed, "Seed");
    rdist->add_option("--threads", rthreads, "Worker threads")->check(CLI::PositiveNumber);

    auto* exp = app.add_subcommand("export-matrix", "Write H or D for random plaintexts in the binary format");
    std::string ecipher = "present80", which = "H", epath;
    std::size_t count = 16;
    std::uint64_t eseed = 1;
    exp->add_option("--cipher", ecipher, "aes128 | present80 | serpent-linear | reduced");
    exp->add_option("--which", which, "H (eps rows) or D (alpha rows)")->check(CLI::IsMember({"H", "D"}));
    exp->add_option("--count", count, "Number of plaintexts")->check(CLI::PositiveNumber);
    exp->add_option("--seed", eseed, "Seed");
    exp->add_option("--out", epath, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*verify) {
            const auto s = cli::parse_suite(suite);
            if (!s) {
                std::cerr << "unknown suite: " << suite << '\n';
                return kUsage;
            }
            const auto items = cli::run_verifications(*s, {.long_checks = !skip_long});
            for (const auto& i : items)
                std::cerr << (i.informational ? "INFO" : i.pass ? "PASS" : "FAIL") << "  " << i.suite << '/' << i.id
                          << "  expected " << i.expected << "  computed " << i.computed << '\n';
            emit(cli::verification_report(items), verify_out);
            return cli::all_passed(items) ? kOk : kFailed;
        }
        if (*dist) {
            auto cfg = cli::load_config(config_path);
            for (const auto& kv : overrides) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw cli::ConfigError("--set expects key=value: " + kv);
                cli::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
            }
            if (seed) cfg.seed = *seed;
            if (threads) cfg.threads = *threads;
            if (!dist_out.empty()) cfg.output = dist_out;
            if (!csv.empty()) cfg.csv = csv;
            const auto rep = cli::run_distinguisher(cfg);
            emit(rep, cfg.output);
            std::cerr << "verdict: " << rep["verdict"].get<std::string>() << '\n';
            return rep["validation"]["ok"].get<bool>() ? kOk : kFailed;
        }
        if (*rdist) {
            emit(cli::rank_distribution_table(rm, rb, rk, trials, rseed, rthreads), "");
            return kOk;
        }
        if (*exp) {
            cli::ExperimentConfig cfg;
            cli::apply_setting(cfg, "cipher", ecipher);
            cfg.embedding = which == "D" ? cli::EmbeddingKind::alpha : cli::EmbeddingKind::eps;
            const auto p = cli::embedding_for(cfg);
            SplitMix64 rng(eseed);
            std::vector<algebra::BitVector> pts;
            for (std::size_t i = 0; i < count; ++i) pts.push_back(rng.bits(p.r()));
            const auto m = which == "D" ? embed::build_D(p, pts) : embed::build_H(p, pts);
            cli::write_matrix(epath, m);
            std::cerr << "wrote " << m.rows() << " x " << m.cols() << " to " << epath << '\n';
            return kOk;
        }
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}
