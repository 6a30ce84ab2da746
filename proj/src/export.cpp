#include <array>
#include <cstring>
#include <fstream>

#include "tbembed/cli.hpp"
#include "tbembed/rankstats.hpp"

namespace tbembed::cli {

namespace {

constexpr std::array<char, 8> kMagic = {'T', 'B', 'E', 'M', 'G', 'F', '2', '\x01'};

void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("truncated matrix file");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

}  // namespace

void write_matrix(const std::filesystem::path& path, const algebra::BitMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, m.rows());
    put_u64(out, m.cols());
    const std::size_t words = algebra::words_for(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto* row = m.row_data(i);
        for (std::size_t w = 0; w < words; ++w) put_u64(out, row[w]);
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

algebra::BitMatrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw std::runtime_error("bad matrix file magic");
    const std::uint64_t rows = get_u64(in), cols = get_u64(in);
    algebra::BitMatrix m(rows, cols);
    const std::size_t words = algebra::words_for(cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t w = 0; w < words; ++w) {
            const std::uint64_t v = get_u64(in);
            for (unsigned bit = 0; bit < 64; ++bit)
                if ((v >> bit) & 1) {
                    const std::size_t c = w * 64 + bit;
                    if (c >= cols) throw std::runtime_error("nonzero padding bit in matrix file");
                    m.set(i, c);
                }
        }
    return m;
}

nlohmann::json rank_distribution_table(unsigned m, unsigned b, unsigned k, std::size_t trials, std::uint64_t seed,
                                       unsigned threads) {
    using namespace rankstats;
    const auto p = embed::EmbeddingParams::eps(algebra::FieldSpec::standard(m), b);
    const auto z = static_cast<unsigned>(embed::eps_dim_formula(m, b));
    if (k == 0 || k > z) throw std::invalid_argument("k must lie in [1, dim T]");
    const BigInt c = BigInt(1) << m;
    const Rational total = boost::multiprecision::pow(boost::multiprecision::pow(c, b), k);

    std::optional<RankHistogram> exact;
    if (p.r() * k <= 24) exact = exhaustive_admissible_ranks(p, k);
    const auto mc = monte_carlo_ranks(admissible_row_sampler(p, k), trials, seed, threads);

    nlohmann::json rows = nlohmann::json::array();
    for (unsigned r = k + 1; r-- > 0;) {
        nlohmann::json row{{"rank", r}};
        std::optional<Rational> est;
        if (r == k) est = rho_full(k, c, b, z);
        if (k >= 2 && r == k - 1) est = rho_rank_deficit(k, c, b, z);
        if (est) row["formula_fraction"] = static_cast<double>(*est / total);
        if (exact) row["exhaustive_fraction"] = exact->fraction(r);
        row["monte_carlo_fraction"] = mc.fraction(r);
        row["monte_carlo_count"] = static_cast<std::uint64_t>(mc.count(r));
        rows.push_back(row);
    }
    return {{"m", m}, {"b", b}, {"k", k}, {"dim_t", z}, {"trials", trials}, {"seed", seed}, {"rows", rows}};
}

}  // namespace tbembed::cli
