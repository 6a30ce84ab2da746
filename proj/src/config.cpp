#include <charconv>
#include <fstream>
#include <sstream>

#include "tbembed/ciphers.hpp"
#include "tbembed/cli.hpp"

namespace tbembed::cli {

std::string to_string(CipherKind v) {
    switch (v) {
        case CipherKind::aes128: return "aes128";
        case CipherKind::present80: return "present80";
        case CipherKind::serpent_linear: return "serpent-linear";
        case CipherKind::reduced: return "reduced";
    }
    return "?";
}

std::string to_string(EmbeddingKind v) { return v == EmbeddingKind::eps ? "eps" : "alpha"; }

std::string to_string(Policy v) {
    switch (v) {
        case Policy::low_rank: return "low-rank";
        case Policy::uniform_admissible: return "uniform-admissible";
        case Policy::uniform_in_t: return "uniform-in-T";
    }
    return "?";
}

std::string to_string(KeyMode v) {
    switch (v) {
        case KeyMode::single: return "single";
        case KeyMode::related: return "related";
        case KeyMode::independent: return "independent";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const bool hex = v.size() > 2 && v[0] == '0' && (v[1] == 'x' || v[1] == 'X');
    const char* first = v.data() + (hex ? 2 : 0);
    const char* last = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(first, last, out, hex ? 16 : 10);
    if (ec != std::errc() || ptr != last || first == last) throw ConfigError("invalid integer for " + key + ": " + v);
    return out;
}

unsigned to_unsigned(const std::string& key, const std::string& v) {
    const auto x = to_u64(key, v);
    if (x > 0xffffffffu) throw ConfigError("value out of range for " + key);
    return static_cast<unsigned>(x);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out = 0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("invalid number for " + key + ": " + v);
    }
    if (pos != v.size()) throw ConfigError("invalid number for " + key + ": " + v);
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("invalid boolean for " + key + ": " + v);
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (out.count(key)) throw ConfigError("duplicate key: " + key);
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& v) {
    if (key == "experiment") {
        if (v != "distinguish") throw ConfigError("unknown experiment: " + v);
        cfg.experiment = v;
    } else if (key == "cipher") {
        if (v == "aes128") cfg.cipher = CipherKind::aes128;
        else if (v == "present80") cfg.cipher = CipherKind::present80;
        else if (v == "serpent-linear") cfg.cipher = CipherKind::serpent_linear;
        else if (v == "reduced") cfg.cipher = CipherKind::reduced;
        else throw ConfigError("unknown cipher: " + v);
    } else if (key == "reduced_m") {
        cfg.reduced_m = to_unsigned(key, v);
    } else if (key == "reduced_b") {
        cfg.reduced_b = to_unsigned(key, v);
    } else if (key == "reduced_rounds") {
        cfg.reduced_rounds = to_unsigned(key, v);
    } else if (key == "embedding") {
        if (v == "eps") cfg.embedding = EmbeddingKind::eps;
        else if (v == "alpha") cfg.embedding = EmbeddingKind::alpha;
        else throw ConfigError("unknown embedding: " + v);
    } else if (key == "matrices") {
        cfg.matrices = to_u64(key, v);
    } else if (key == "rows") {
        cfg.rows = to_u64(key, v);
    } else if (key == "policy") {
        if (v == "low-rank") cfg.policy = Policy::low_rank;
        else if (v == "uniform-admissible") cfg.policy = Policy::uniform_admissible;
        else if (v == "uniform-in-T") cfg.policy = Policy::uniform_in_t;
        else throw ConfigError("unknown policy: " + v);
    } else if (key == "low_rank_dim") {
        cfg.low_rank_dim = to_unsigned(key, v);
    } else if (key == "key_mode") {
        if (v == "single") cfg.key_mode = KeyMode::single;
        else if (v == "related") cfg.key_mode = KeyMode::related;
        else if (v == "independent") cfg.key_mode = KeyMode::independent;
        else throw ConfigError("unknown key mode: " + v);
    } else if (key == "related_keys") {
        cfg.related_keys = to_u64(key, v);
    } else if (key == "baseline_trials") {
        cfg.baseline_trials = to_u64(key, v);
    } else if (key == "validation_runs") {
        cfg.validation_runs = to_u64(key, v);
    } else if (key == "seed") {
        cfg.seed = to_u64(key, v);
    } else if (key == "significance") {
        cfg.significance = to_double(key, v);
    } else if (key == "threads") {
        cfg.threads = to_unsigned(key, v);
    } else if (key == "memory_limit_mb") {
        cfg.memory_limit_mb = to_u64(key, v);
    } else if (key == "allow_large") {
        cfg.allow_large = to_bool(key, v);
    } else if (key == "output") {
        cfg.output = v;
    } else if (key == "csv") {
        cfg.csv = v;
    } else {
        throw ConfigError("unknown key: " + key);
    }
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    for (const auto& [k, v] : parse_key_values(text)) apply_setting(cfg, k, v);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void ExperimentConfig::validate() const {
    if (!seed) throw ConfigError("seed is mandatory");
    if (matrices == 0) throw ConfigError("matrices must be positive");
    if (baseline_trials == 0) throw ConfigError("baseline_trials must be positive");
    if (validation_runs == 0) throw ConfigError("validation_runs must be positive");
    if (related_keys == 0) throw ConfigError("related_keys must be positive");
    if (threads == 0) throw ConfigError("threads must be positive");
    if (!(significance > 0 && significance < 1)) throw ConfigError("significance must lie in (0, 1)");
    if (cipher == CipherKind::reduced) {
        if (reduced_m < 2 || reduced_m > 8) throw ConfigError("reduced_m must lie in [2, 8]");
        if (reduced_b < 2 || reduced_b > 16) throw ConfigError("reduced_b must lie in [2, 16]");
        if (reduced_rounds == 0) throw ConfigError("reduced_rounds must be positive");
        try {
            ciphers::reduced_cipher(reduced_m, reduced_b, 1);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("reduced cipher: ") + e.what());
        }
    }
    if (cipher == CipherKind::serpent_linear && embedding == EmbeddingKind::alpha)
        throw ConfigError("the SERPENT linear layer has no practical orbit embedding");
    if (policy == Policy::low_rank && low_rank_dim == 0) throw ConfigError("low-rank policy needs low_rank_dim > 0");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["cipher"] = to_string(cipher);
    if (cipher == CipherKind::reduced)
        j["reduced"] = {{"m", reduced_m}, {"b", reduced_b}, {"rounds", reduced_rounds}};
    j["embedding"] = to_string(embedding);
    j["matrices"] = matrices;
    j["rows"] = rows;
    j["policy"] = to_string(policy);
    j["low_rank_dim"] = low_rank_dim;
    j["key_mode"] = to_string(key_mode);
    j["related_keys"] = related_keys;
    j["baseline_trials"] = baseline_trials;
    j["validation_runs"] = validation_runs;
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json();
    j["significance"] = significance;
    j["threads"] = threads;
    j["memory_limit_mb"] = memory_limit_mb;
    j["allow_large"] = allow_large;
    return j;
}

}  // namespace tbembed::cli
