#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tbembed/bit_matrix.hpp"
#include "tbembed/embedding.hpp"

namespace tbembed::cli {

inline constexpr const char* kToolName = "tbembed";
inline constexpr const char* kToolVersion = "0.1.0";

enum class CipherKind { aes128, present80, serpent_linear, reduced };
enum class EmbeddingKind { eps, alpha };
enum class Policy { low_rank, uniform_admissible, uniform_in_t };
enum class KeyMode { single, related, independent };

std::string to_string(CipherKind v);
std::string to_string(EmbeddingKind v);
std::string to_string(Policy v);
std::string to_string(KeyMode v);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment = "distinguish";
    CipherKind cipher = CipherKind::reduced;
    unsigned reduced_m = 4, reduced_b = 4, reduced_rounds = 4;
    EmbeddingKind embedding = EmbeddingKind::eps;
    std::size_t matrices = 200;
    // 0 selects dim T
    std::size_t rows = 0;
    Policy policy = Policy::uniform_admissible;
    unsigned low_rank_dim = 0;
    KeyMode key_mode = KeyMode::single;
    std::size_t related_keys = 4;
    std::size_t baseline_trials = 20000;
    std::size_t validation_runs = 200;
    std::optional<std::uint64_t> seed;
    double significance = 0.01;
    unsigned threads = 1;
    std::size_t memory_limit_mb = 2048;
    bool allow_large = false;
    std::string output;
    std::string csv;

    // Throws ConfigError on invalid values or a missing seed.
    void validate() const;
    nlohmann::json to_json() const;
};

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text);
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ExperimentPlan {
    embed::EmbeddingParams params;
    std::size_t dim_t = 0;
    std::size_t rows = 0;
    std::size_t keys_per_matrix = 1;
    std::size_t estimated_bytes = 0;
};

embed::EmbeddingParams embedding_for(const ExperimentConfig& cfg);
// Upper estimate of the peak working set of a run.
std::size_t estimate_memory_bytes(const ExperimentConfig& cfg, const embed::EmbeddingParams& p, std::size_t dim_t,
                                  std::size_t rows);

// Report JSON; "wall_time" is the only field that depends on the run.
nlohmann::json run_distinguisher(const ExperimentConfig& cfg);
// Same report with the wall_time removed, for comparisons.
nlohmann::json strip_timing(nlohmann::json report);

enum class Suite { dims, orders, counterexamples, rankstats, extend, bounds, all };
std::optional<Suite> parse_suite(const std::string& s);

struct VerifyOptions {
    // include the AES orbit dimension (about 20 s)
    bool long_checks = true;
};

struct VerifyItem {
    std::string suite, id, claim, expected, computed;
    bool pass = false;
    bool informational = false;
};

std::vector<VerifyItem> run_verifications(Suite suite, const VerifyOptions& opt = {});
nlohmann::json verification_report(const std::vector<VerifyItem>& items);
bool all_passed(const std::vector<VerifyItem>& items);

// Bit-packed binary matrix file: "TBEMGF2\x01", rows and cols as u64 LE,
// then row-major u64 LE words, ceil(cols / 64) per row, unused bits zero.
void write_matrix(const std::filesystem::path& path, const algebra::BitMatrix& m);
algebra::BitMatrix read_matrix(const std::filesystem::path& path);

nlohmann::json rank_distribution_table(unsigned m, unsigned b, unsigned k, std::size_t trials, std::uint64_t seed,
                                       unsigned threads);

}  // namespace tbembed::cli
