#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>
#include <unordered_set>

#include "tbembed/ciphers.hpp"
#include "tbembed/cli.hpp"
#include "tbembed/matrix_order.hpp"
#include "tbembed/rankstats.hpp"
#include "tbembed/rng.hpp"

namespace tbembed::cli {

using algebra::BitMatrix;
using algebra::BitVector;
using embed::EmbeddingParams;
using Encryptor = std::function<BitVector(const BitVector&)>;

namespace {

// Stream indices below the run seed.
enum Stream : std::uint64_t { key_stream = 1, matrix_stream = 2, baseline_stream = 3, validation_stream = 4,
                              round_key_stream = 5, admissible_stream = 6 };

std::uint64_t stream(std::uint64_t seed, Stream s) { return SplitMix64::derive(seed, s); }

std::optional<ciphers::TbCipherSpec> cipher_spec(const ExperimentConfig& cfg) {
    switch (cfg.cipher) {
        case CipherKind::aes128: return ciphers::aes128();
        case CipherKind::present80: return ciphers::present80();
        case CipherKind::reduced: return ciphers::reduced_cipher(cfg.reduced_m, cfg.reduced_b, cfg.reduced_rounds);
        case CipherKind::serpent_linear: return std::nullopt;
    }
    return std::nullopt;
}

std::size_t state_bits(const ExperimentConfig& cfg) {
    switch (cfg.cipher) {
        case CipherKind::aes128:
        case CipherKind::serpent_linear: return 128;
        case CipherKind::present80: return 64;
        case CipherKind::reduced: return std::size_t{cfg.reduced_m} * cfg.reduced_b;
    }
    return 0;
}

std::size_t key_bits(const std::optional<ciphers::TbCipherSpec>& spec) {
    return spec ? spec->key_bits() : 128;
}

Encryptor keyed(const std::optional<ciphers::TbCipherSpec>& spec, const BitVector& key) {
    if (!spec) return [key](const BitVector& v) { return ciphers::serpent_linear_transform(v ^ key); };
    auto rk = spec->round_keys(key);
    return [&spec = *spec, rk = std::move(rk)](const BitVector& v) { return spec.encrypt_with_round_keys(rk, v); };
}

Encryptor with_round_keys(const std::optional<ciphers::TbCipherSpec>& spec, std::uint64_t seed, std::size_t bits) {
    if (!spec) {
        SplitMix64 rng(seed);
        return keyed(spec, rng.bits(bits));
    }
    auto rk = ciphers::independent_round_keys(spec->rounds() + 1, spec->state_bits(), seed);
    return [&spec = *spec, rk = std::move(rk)](const BitVector& v) { return spec.encrypt_with_round_keys(rk, v); };
}

// k distinct random states.
std::vector<BitVector> distinct_states(SplitMix64& rng, std::size_t r, std::size_t k) {
    std::unordered_set<BitVector, algebra::BitVectorHash> seen;
    std::vector<BitVector> out;
    while (out.size() < k) {
        BitVector v = rng.bits(r);
        if (seen.insert(v).second) out.push_back(std::move(v));
    }
    return out;
}

// k distinct points of a random affine subspace of dimension d.
std::vector<BitVector> low_rank_states(SplitMix64& rng, std::size_t r, unsigned d, std::size_t k) {
    algebra::SpanSolver solver(r, false);
    std::vector<BitVector> dirs;
    while (dirs.size() < d) {
        BitVector v = rng.bits(r);
        if (solver.insert(v)) dirs.push_back(std::move(v));
    }
    const BitVector base = rng.bits(r);
    std::vector<BitVector> out;
    for (const auto& c : distinct_states(rng, d, k)) {
        BitVector v = base;
        for (unsigned i = 0; i < d; ++i)
            if (c.get(i)) v ^= dirs[i];
        out.push_back(std::move(v));
    }
    return out;
}

BitVector nonzero_bits(SplitMix64& rng, std::size_t n) {
    BitVector c = rng.bits(n);
    while (c.is_zero()) c = rng.bits(n);
    return c;
}

BitVector combine(const BitVector& coeffs, const std::vector<BitVector>& vectors, std::size_t width) {
    BitVector out(width);
    for (std::size_t i = 0; i < vectors.size(); ++i)
        if (coeffs.get(i)) out ^= vectors[i];
    return out;
}

algebra::RankMethod method_for(std::size_t cols) {
    return cols >= 1024 ? algebra::RankMethod::four_russians : algebra::RankMethod::gaussian;
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
    threads = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, count)));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) body(i);
        });
    for (auto& th : pool) th.join();
}

nlohmann::json histogram_json(const rankstats::RankHistogram& h) {
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& [r, c] : h.bins()) bins.push_back({{"rank", r}, {"count", c.str()}});
    return {{"source", rankstats::to_string(h.source())}, {"total", h.total().str()}, {"bins", bins}};
}

}  // namespace

EmbeddingParams embedding_for(const ExperimentConfig& cfg) {
    const bool alpha = cfg.embedding == EmbeddingKind::alpha;
    switch (cfg.cipher) {
        case CipherKind::aes128: return alpha ? embed::aes_alpha() : embed::aes_eps();
        case CipherKind::present80: return alpha ? embed::present_alpha() : embed::present_eps();
        case CipherKind::serpent_linear:
            if (alpha) throw ConfigError("the SERPENT linear layer has no practical orbit embedding");
            return embed::serpent_eps();
        case CipherKind::reduced: {
            const auto field = algebra::FieldSpec::standard(cfg.reduced_m);
            if (!alpha) return EmbeddingParams::eps(field, cfg.reduced_b);
            const auto spec = ciphers::reduced_cipher(cfg.reduced_m, cfg.reduced_b, cfg.reduced_rounds);
            const auto t = algebra::matrix_order(spec.mixing(0), 64);
            if (!t) throw ConfigError("mixing layer order too large for an orbit embedding");
            return EmbeddingParams::orbit(field, cfg.reduced_b, spec.mixing(0), static_cast<unsigned>(*t));
        }
    }
    throw ConfigError("unknown cipher");
}

std::size_t estimate_memory_bytes(const ExperimentConfig& cfg, const EmbeddingParams& p, std::size_t dim_t,
                                  std::size_t rows) {
    const std::size_t row_bytes = algebra::words_for(p.s()) * 8;
    const std::size_t matrix = rows * row_bytes;
    // matrix, elimination copy and row scratch per worker, plus a Gray-code table
    const std::size_t per_worker = 3 * matrix + 256 * row_bytes + rows * (p.r() / 8 + 64);
    const std::size_t keys = cfg.key_mode == KeyMode::related ? cfg.related_keys : 1;
    std::size_t shared = 0;
    if (cfg.policy == Policy::uniform_in_t || cfg.embedding == EmbeddingKind::alpha)
        shared += 3 * dim_t * row_bytes * (1 + keys);  // admissible basis, generators, their images
    shared += (cfg.matrices * keys + cfg.baseline_trials) * sizeof(std::size_t) * 2;
    return shared + per_worker * cfg.threads + (std::size_t{16} << 20);
}

nlohmann::json run_distinguisher(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = *cfg.seed;
    const auto spec = cipher_spec(cfg);
    const EmbeddingParams p = embedding_for(cfg);
    const std::size_t r = state_bits(cfg);
    nlohmann::json notes = nlohmann::json::array();

    // dim T: formula for the parallel embedding, elimination otherwise
    std::optional<embed::AdmissibleSpace> space;
    std::size_t dim_t = embed::eps_dim_formula(p.m(), p.b());
    const bool need_space = cfg.policy == Policy::uniform_in_t || p.t() > 1;
    if (p.t() > 1) dim_t = embed::orbit_dim_formula(p.m(), p.b(), p.t());
    const std::size_t rows = cfg.rows ? cfg.rows : dim_t;
    const std::size_t estimate = estimate_memory_bytes(cfg, p, dim_t, rows);
    if (estimate > cfg.memory_limit_mb * (std::size_t{1} << 20) && !cfg.allow_large)
        throw ConfigError("estimated memory " + std::to_string(estimate >> 20) + " MiB exceeds memory_limit_mb = " +
                          std::to_string(cfg.memory_limit_mb) + " (set allow_large to override)");
    if (need_space) {
        embed::AdmissibleOptions opt;
        opt.seed = stream(seed, admissible_stream);
        space = embed::admissible_dim(p, opt);
        dim_t = space->dim;
    }
    if (cfg.policy != Policy::uniform_in_t && rows > (std::size_t{1} << std::min<std::size_t>(r, 62)))
        throw ConfigError("more rows than distinct states");
    if (cfg.policy == Policy::low_rank && (cfg.low_rank_dim > r || (cfg.low_rank_dim < 63 &&
                                                                    rows > (std::size_t{1} << cfg.low_rank_dim))))
        throw ConfigError("low_rank_dim too small for the requested number of distinct rows");
    if (cfg.cipher == CipherKind::aes128) notes.push_back("full AES dimensions: long-running");

    // keys
    const std::size_t kb = key_bits(spec);
    SplitMix64 krng(stream(seed, key_stream));
    const BitVector master = krng.bits(kb);
    std::vector<BitVector> keys;
    std::vector<Encryptor> shared_enc;
    if (cfg.key_mode == KeyMode::single) {
        keys.push_back(master);
    } else if (cfg.key_mode == KeyMode::related) {
        for (std::size_t j = 0; j < cfg.related_keys; ++j) keys.push_back(master ^ BitVector::from_u64(kb, j));
        notes.push_back("related keys: k_j = k_0 xor j (j in the low key bits)");
    } else {
        notes.push_back("independent round keys derived per matrix");
    }
    for (const auto& k : keys) shared_enc.push_back(keyed(spec, k));
    const std::size_t per_matrix = cfg.key_mode == KeyMode::related ? cfg.related_keys : 1;

    std::vector<BitVector> generators;
    if (cfg.policy == Policy::uniform_in_t) {
        generators = space->generators;
        notes.push_back("rows outside Im(alpha) are encrypted through their decomposition over admissible "
                        "generators: E(sum alpha(g_i)) := sum alpha(E(g_i))");
        if (cfg.key_mode != KeyMode::independent)
            notes.push_back("all matrices share the encrypted generator images of each key, so their ranks are "
                            "bounded by the rank of those images");
    }
    auto encrypted_generators = [&](const Encryptor& enc) {
        std::vector<BitVector> out;
        out.reserve(generators.size());
        for (const auto& g : generators) out.push_back(embed::alpha(p, enc(g)));
        return out;
    };
    std::vector<std::vector<BitVector>> shared_gen_images;
    if (cfg.policy == Policy::uniform_in_t)
        for (const auto& enc : shared_enc) shared_gen_images.push_back(encrypted_generators(enc));

    // steps 1-2: choose S, encrypt row by row, rank
    std::vector<std::size_t> ranks(cfg.matrices * per_matrix);
    const std::uint64_t mseed = stream(seed, matrix_stream);
    parallel_for(cfg.matrices, cfg.threads, [&](std::size_t i) {
        SplitMix64 rng(SplitMix64::derive(mseed, i));
        std::vector<BitVector> pts, coeffs;
        if (cfg.policy == Policy::uniform_admissible) pts = distinct_states(rng, r, rows);
        else if (cfg.policy == Policy::low_rank) pts = low_rank_states(rng, r, cfg.low_rank_dim, rows);
        else
            for (std::size_t k = 0; k < rows; ++k) coeffs.push_back(nonzero_bits(rng, generators.size()));

        std::vector<Encryptor> local;
        std::vector<std::vector<BitVector>> local_images;
        if (cfg.key_mode == KeyMode::independent) {
            local.push_back(with_round_keys(spec, SplitMix64::derive(stream(seed, round_key_stream), i), kb));
            if (cfg.policy == Policy::uniform_in_t) local_images.push_back(encrypted_generators(local[0]));
        }
        const auto& encs = cfg.key_mode == KeyMode::independent ? local : shared_enc;
        const auto& images = cfg.key_mode == KeyMode::independent ? local_images : shared_gen_images;
        for (std::size_t j = 0; j < encs.size(); ++j) {
            BitMatrix m(rows, p.s());
            for (std::size_t k = 0; k < rows; ++k)
                m.set_row(k, cfg.policy == Policy::uniform_in_t ? combine(coeffs[k], images[j], p.s())
                                                                : embed::alpha(p, encs[j](pts[k])));
            ranks[i * per_matrix + j] = algebra::rank(m, method_for(p.s()));
        }
    });
    rankstats::RankHistogram observed(rankstats::Source::experiment);
    for (auto x : ranks) observed.add(x);

    // step 3: expected distribution, the same construction under a random permutation
    rankstats::MatrixSampler random_sampler;
    if (cfg.policy == Policy::uniform_in_t) {
        random_sampler = [&](SplitMix64& rng) {
            std::vector<BitVector> images;
            for (const auto& v : distinct_states(rng, r, generators.size())) images.push_back(embed::alpha(p, v));
            BitMatrix m(rows, p.s());
            for (std::size_t k = 0; k < rows; ++k) m.set_row(k, combine(nonzero_bits(rng, images.size()), images, p.s()));
            return m;
        };
    } else {
        random_sampler = [&](SplitMix64& rng) {
            BitMatrix m(rows, p.s());
            const auto pts = distinct_states(rng, r, rows);
            for (std::size_t k = 0; k < rows; ++k) m.set_row(k, embed::alpha(p, pts[k]));
            return m;
        };
    }
    const auto expected = rankstats::monte_carlo_ranks(random_sampler, cfg.baseline_trials,
                                                       stream(seed, baseline_stream), cfg.threads);
    const auto chi = rankstats::chi_square_compare(observed, expected, cfg.significance);

    // step 4: random matrices must not be distinguished
    std::size_t rejections = 0, insufficient_runs = 0;
    const std::uint64_t vseed = stream(seed, validation_stream);
    for (std::size_t run = 0; run < cfg.validation_runs; ++run) {
        const auto h = rankstats::monte_carlo_ranks(random_sampler, cfg.matrices * per_matrix,
                                                    SplitMix64::derive(vseed, run), cfg.threads);
        const auto res = rankstats::chi_square_compare(h, expected, cfg.significance);
        rejections += res.distinguished;
        insufficient_runs += res.insufficient;
    }
    const auto max_rej = static_cast<std::size_t>(std::floor(2 * cfg.significance * cfg.validation_runs));
    const bool validation_ok = rejections <= max_rej;

    std::string verdict;
    if (chi.insufficient) verdict = "insufficient-data";
    else if (!chi.distinguished) verdict = "not-distinguished";
    else verdict = validation_ok ? "distinguished" : "validation-failed";

    nlohmann::json rep;
    rep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    rep["config"] = cfg.to_json();
    rep["rng"] = {{"generator", "splitmix64"}, {"seed", seed}};
    rep["embedding"] = {{"kind", to_string(cfg.embedding)}, {"m", p.m()}, {"b", p.b()}, {"t", p.t()},
                        {"s", p.s()}, {"dim_t", dim_t}, {"rows", rows}};
    nlohmann::json key_list = nlohmann::json::array();
    for (const auto& k : keys) key_list.push_back(k.to_hex());
    rep["keys"] = key_list;
    rep["ranks"] = ranks;
    rep["ranks_per_matrix"] = per_matrix;
    rep["observed"] = histogram_json(observed);
    rep["expected"] = histogram_json(expected);
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& b : chi.bins)
        bins.push_back({{"first_rank", b.first_rank}, {"last_rank", b.last_rank}, {"observed", b.observed},
                        {"expected", b.expected}});
    rep["chi_square"] = {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value},
                         {"distinguished", chi.distinguished}, {"insufficient", chi.insufficient},
                         {"bins", bins}};
    rep["validation"] = {{"runs", cfg.validation_runs}, {"matrices_per_run", cfg.matrices * per_matrix},
                         {"rejections", rejections}, {"max_rejections", max_rej},
                         {"insufficient_runs", insufficient_runs},
                         {"rate", static_cast<double>(rejections) / static_cast<double>(cfg.validation_runs)},
                         {"ok", validation_ok}};
    rep["verdict"] = verdict;
    rep["estimated_memory_bytes"] = estimate;
    rep["notes"] = notes;
    rep["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!cfg.csv.empty()) {
        std::ofstream out(cfg.csv);
        if (!out) throw ConfigError("cannot write csv file: " + cfg.csv);
        out << "matrix,key,rank\n";
        for (std::size_t i = 0; i < ranks.size(); ++i)
            out << i / per_matrix << ',' << i % per_matrix << ',' << ranks[i] << '\n';
    }
    return rep;
}

nlohmann::json strip_timing(nlohmann::json report) {
    report.erase("wall_time");
    return report;
}

}  // namespace tbembed::cli
