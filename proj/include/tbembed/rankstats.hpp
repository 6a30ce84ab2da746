#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tbembed/bit_matrix.hpp"
#include "tbembed/embedding.hpp"
#include "tbembed/rng.hpp"

namespace tbembed::rankstats {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using algebra::BitMatrix;
using algebra::BitVector;

BigInt q_binomial(unsigned n, unsigned k, unsigned q);
// Number of t x n matrices over F_q of rank k.
BigInt migler_count(unsigned k, unsigned t, unsigned n, unsigned q);

// Estimates for k x n matrices with admissible rows; c = 2^m, z = dim T.
Rational xi(unsigned h, const BigInt& c, unsigned b, unsigned z);
Rational rho_full(unsigned k, const BigInt& c, unsigned b, unsigned z);
Rational rho_rank_deficit(unsigned k, const BigInt& c, unsigned b, unsigned z);

enum class Source { formula, monte_carlo, exhaustive, experiment };
std::string to_string(Source s);

class RankHistogram {
public:
    explicit RankHistogram(Source source = Source::experiment) : source_(source) {}

    void add(std::size_t rank, const Rational& count = 1);
    void merge(const RankHistogram& other);
    Rational count(std::size_t rank) const;
    Rational total() const;
    double fraction(std::size_t rank) const;
    Source source() const { return source_; }
    const std::map<std::size_t, Rational>& bins() const { return bins_; }
    bool operator==(const RankHistogram& o) const { return bins_ == o.bins_; }

    // "rank count" per line, counts written as integers or p/q
    std::string to_text() const;
    static RankHistogram from_text(const std::string& text, Source source);

private:
    Source source_;
    std::map<std::size_t, Rational> bins_;
};

using MatrixSampler = std::function<BitMatrix(SplitMix64&)>;

MatrixSampler uniform_matrix_sampler(std::size_t rows, std::size_t cols);
MatrixSampler admissible_row_sampler(const embed::EmbeddingParams& p, std::size_t rows);
// Rows are random combinations of `rank` fixed random vectors, so every
// matrix has rank at most `rank`.
MatrixSampler constant_rank_sampler(std::size_t rows, std::size_t cols, std::size_t rank, std::uint64_t basis_seed);

// Trial i uses the generator seeded with SplitMix64::derive(seed, i).
std::vector<std::size_t> sample_ranks(const MatrixSampler& sampler, std::size_t trials, std::uint64_t seed,
                                      unsigned threads = 1);
RankHistogram monte_carlo_ranks(const MatrixSampler& sampler, std::size_t trials, std::uint64_t seed,
                                unsigned threads = 1);

RankHistogram migler_distribution(unsigned t, unsigned n, unsigned q = 2);
// Every k-tuple of admissible rows, at most 2^24 tuples.
RankHistogram exhaustive_admissible_ranks(const embed::EmbeddingParams& p, unsigned k);

struct MergedBin {
    std::size_t first_rank = 0, last_rank = 0;
    double observed = 0, expected = 0;
};

struct ChiSquareResult {
    double statistic = 0;
    unsigned dof = 0;
    double p_value = 1;
    bool distinguished = false;
    bool insufficient = false;
    std::vector<MergedBin> bins;
};

ChiSquareResult chi_square_compare(const RankHistogram& observed, const RankHistogram& expected, double significance);

struct Calibration {
    std::size_t runs = 0;
    std::size_t rejections = 0;
    double rate() const { return runs ? static_cast<double>(rejections) / static_cast<double>(runs) : 0.0; }
};

// Runs `runs` independent experiments of `n` matrices against `expected`.
Calibration calibrate(const MatrixSampler& sampler, const RankHistogram& expected, std::size_t n, std::size_t runs,
                      double significance, std::uint64_t seed, unsigned threads = 1);

}  // namespace tbembed::rankstats
