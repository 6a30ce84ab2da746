#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "tbembed/rankstats.hpp"

namespace tbembed::rankstats {

std::string to_string(Source s) {
    switch (s) {
        case Source::formula: return "formula";
        case Source::monte_carlo: return "monte-carlo";
        case Source::exhaustive: return "exhaustive";
        case Source::experiment: return "experiment";
    }
    return "unknown";
}

void RankHistogram::add(std::size_t rank, const Rational& count) {
    if (count < 0) throw std::invalid_argument("negative histogram count");
    if (count == 0) return;
    bins_[rank] += count;
}

void RankHistogram::merge(const RankHistogram& other) {
    for (const auto& [r, c] : other.bins_) add(r, c);
}

Rational RankHistogram::count(std::size_t rank) const {
    const auto it = bins_.find(rank);
    return it == bins_.end() ? Rational(0) : it->second;
}

Rational RankHistogram::total() const {
    Rational t = 0;
    for (const auto& [r, c] : bins_) t += c;
    return t;
}

double RankHistogram::fraction(std::size_t rank) const {
    const Rational t = total();
    if (t == 0) return 0.0;
    return static_cast<double>(count(rank) / t);
}

std::string RankHistogram::to_text() const {
    std::ostringstream os;
    for (const auto& [r, c] : bins_) os << r << ' ' << c << '\n';
    return os.str();
}

RankHistogram RankHistogram::from_text(const std::string& text, Source source) {
    RankHistogram h(source);
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::size_t r;
        std::string c;
        if (!(ls >> r >> c)) throw std::invalid_argument("malformed histogram line: " + line);
        h.add(r, Rational(c));
    }
    return h;
}

MatrixSampler uniform_matrix_sampler(std::size_t rows, std::size_t cols) {
    return [rows, cols](SplitMix64& rng) {
        BitMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) m.set_row(i, rng.bits(cols));
        return m;
    };
}

MatrixSampler admissible_row_sampler(const embed::EmbeddingParams& p, std::size_t rows) {
    return [p, rows](SplitMix64& rng) {
        BitMatrix m(rows, p.s());
        for (std::size_t i = 0; i < rows; ++i) m.set_row(i, embed::alpha(p, rng.bits(p.r())));
        return m;
    };
}

MatrixSampler constant_rank_sampler(std::size_t rows, std::size_t cols, std::size_t rank, std::uint64_t basis_seed) {
    SplitMix64 brng(basis_seed);
    std::vector<BitVector> basis;
    for (std::size_t i = 0; i < rank; ++i) basis.push_back(brng.bits(cols));
    return [rows, cols, basis](SplitMix64& rng) {
        BitMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            const BitVector c = rng.bits(basis.size());
            BitVector row(cols);
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (c.get(k)) row ^= basis[k];
            m.set_row(i, row);
        }
        return m;
    };
}

std::vector<std::size_t> sample_ranks(const MatrixSampler& sampler, std::size_t trials, std::uint64_t seed,
                                      unsigned threads) {
    std::vector<std::size_t> ranks(trials);
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < trials; i += step) {
            SplitMix64 rng(SplitMix64::derive(seed, i));
            ranks[i] = algebra::rank(sampler(rng));
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
    if (threads == 1) {
        work(0, 1);
        return ranks;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
    return ranks;
}

RankHistogram monte_carlo_ranks(const MatrixSampler& sampler, std::size_t trials, std::uint64_t seed,
                                unsigned threads) {
    RankHistogram h(Source::monte_carlo);
    for (auto r : sample_ranks(sampler, trials, seed, threads)) h.add(r);
    return h;
}

ChiSquareResult chi_square_compare(const RankHistogram& observed, const RankHistogram& expected, double significance) {
    const Rational n_obs = observed.total(), n_exp = expected.total();
    if (n_obs == 0) throw std::invalid_argument("observed histogram is empty");
    if (n_exp == 0) throw std::invalid_argument("expected histogram is empty");
    if (!(significance > 0 && significance < 1)) throw std::invalid_argument("significance must lie in (0, 1)");

    std::vector<std::size_t> ranks;
    for (const auto& [r, c] : observed.bins()) ranks.push_back(r);
    for (const auto& [r, c] : expected.bins()) ranks.push_back(r);
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());

    ChiSquareResult res;
    MergedBin cur;
    bool open = false;
    for (auto r : ranks) {
        if (!open) {
            cur = MergedBin{r, r, 0, 0};
            open = true;
        }
        cur.last_rank = r;
        cur.observed += static_cast<double>(observed.count(r));
        cur.expected += static_cast<double>(expected.count(r) * n_obs / n_exp);
        if (cur.expected >= 5.0) {
            res.bins.push_back(cur);
            open = false;
        }
    }
    if (open) {
        if (res.bins.empty()) {
            res.bins.push_back(cur);
        } else {
            auto& last = res.bins.back();
            last.last_rank = cur.last_rank;
            last.observed += cur.observed;
            last.expected += cur.expected;
        }
    }
    if (res.bins.size() < 2) {
        res.insufficient = true;
        return res;
    }
    for (const auto& bin : res.bins) {
        const double d = bin.observed - bin.expected;
        res.statistic += d * d / bin.expected;
    }
    res.dof = static_cast<unsigned>(res.bins.size() - 1);
    res.p_value = boost::math::gamma_q(res.dof / 2.0, res.statistic / 2.0);
    res.distinguished = res.p_value < significance;
    return res;
}

Calibration calibrate(const MatrixSampler& sampler, const RankHistogram& expected, std::size_t n, std::size_t runs,
                      double significance, std::uint64_t seed, unsigned threads) {
    Calibration cal;
    cal.runs = runs;
    for (std::size_t i = 0; i < runs; ++i) {
        const RankHistogram obs = monte_carlo_ranks(sampler, n, SplitMix64::derive(seed, i), threads);
        if (chi_square_compare(obs, expected, significance).distinguished) ++cal.rejections;
    }
    return cal;
}

}  // namespace tbembed::rankstats
