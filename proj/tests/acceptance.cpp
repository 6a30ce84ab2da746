// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "support.hpp"
#include "tbembed/bounds.hpp"
#include "tbembed/ciphers.hpp"
#include "tbembed/cli.hpp"
#include "tbembed/counterexamples.hpp"
#include "tbembed/embedding.hpp"
#include "tbembed/extend.hpp"
#include "tbembed/matrix_order.hpp"
#include "tbembed/rankstats.hpp"

using namespace tbembed;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

Outcome cipher_correctness() {
    std::size_t kat = 0, kat_ok = 0, trips = 0, trips_ok = 0;
    const std::pair<ciphers::TbCipherSpec, const char*> cases[] = {
        {ciphers::aes128(), TBEMBED_TEST_DATA "/aes128_kat.txt"},
        {ciphers::present80(), TBEMBED_TEST_DATA "/present80_kat.txt"}};
    for (const auto& [spec, file] : cases) {
        for (const auto& v : ciphers::load_test_vectors(file, spec)) {
            ++kat;
            kat_ok += spec.encrypt(v.key, v.plaintext) == v.ciphertext && spec.decrypt(v.key, v.ciphertext) == v.plaintext;
        }
        SplitMix64 rng(SplitMix64::derive(1, kat));
        for (int i = 0; i < 10000; ++i) {
            const auto k = rng.bits(spec.key_bits()), p = rng.bits(spec.state_bits());
            ++trips;
            trips_ok += spec.decrypt(k, spec.encrypt(k, p)) == p;
        }
    }
    return {kat == 6 && kat_ok == kat && trips_ok == trips,
            std::to_string(kat_ok) + "/" + std::to_string(kat) + " known answers, " + std::to_string(trips_ok) + "/" +
                std::to_string(trips) + " round trips"};
}

Outcome dimensions(bool long_run) {
    struct Case {
        const char* name;
        embed::EmbeddingParams (*params)();
        std::size_t want;
    };
    std::vector<Case> cases = {{"AES eps", embed::aes_eps, 4081},
                               {"PRESENT eps", embed::present_eps, 241},
                               {"SERPENT eps", embed::serpent_eps, 481},
                               {"PRESENT alpha", embed::present_alpha, 593}};
    if (long_run) cases.push_back({"AES alpha", embed::aes_alpha, 31745});
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto space = embed::admissible_dim(c.params());
        ok = ok && space.exact && space.dim == c.want;
        detail += std::string(detail.empty() ? "" : ", ") + c.name + " " + std::to_string(space.dim);
    }
    if (!long_run) detail += " (AES alpha needs --long)";
    return {ok, detail};
}

Outcome orders() {
    using ciphers::Layer;
    const std::pair<Layer, std::uint64_t> cases[] = {
        {Layer::aes_full, 8}, {Layer::shift_rows, 4}, {Layer::mix_columns, 4}, {Layer::present_player, 3}};
    bool ok = true;
    std::string detail;
    for (const auto& [layer, want] : cases) {
        const auto o = algebra::matrix_order(ciphers::mixing_layer_matrix(layer), 64);
        ok = ok && o == want;
        detail += (o ? std::to_string(*o) : std::string("?")) + " ";
    }
    const auto serpent = algebra::matrix_order_exact(ciphers::mixing_layer_matrix(Layer::serpent));
    ok = ok && serpent == algebra::BigInt("110329570561973845861261474090270635");
    return {ok, "orders " + detail + serpent.str()};
}

Outcome counterexamples() {
    const auto mc = embed::verify_mc_counterexample();
    const std::vector<std::vector<std::size_t>> want = {{1, 3, 0, 51}, {3, 51, 3, 51}, {1, 3, 51, 1}, {3, 51, 1, 1}};
    const bool mc_ok = mc.relation_holds && mc.image_positions == want && mc.violation && mc.offending_weight == 3;
    const auto pl = embed::verify_player_counterexample();
    const bool pl_ok = pl.relation_holds && pl.violation && pl.offending_block == 0 && pl.offending_weight == 3;
    return {mc_ok && pl_ok, std::string("MixColumns ") + (mc_ok ? "reproduced" : "mismatch") + ", pLayer " +
                                (pl_ok ? "reproduced" : "mismatch")};
}

Outcome counting() {
    using namespace rankstats;
    bool sums = true;
    for (unsigned q : {2u, 4u})
        for (unsigned t = 1; t <= 6; ++t)
            for (unsigned n = 1; n <= 6; ++n) {
                BigInt s = 0;
                for (unsigned k = 0; k <= 6; ++k) s += migler_count(k, t, n, q);
                sums = sums && s == boost::multiprecision::pow(BigInt(q), t * n);
            }
    const auto p = embed::EmbeddingParams::eps(algebra::FieldSpec::standard(2), 2);
    const BigInt c = 4;
    const auto h3 = exhaustive_admissible_ranks(p, 3);
    const auto h4 = exhaustive_admissible_ranks(p, 4);
    const bool k3 = h3.count(3) == 3360 && h3.count(2) == 720 && rho_full(3, c, 2, 7) == 3360 &&
                    rho_rank_deficit(3, c, 2, 7) == 720;
    auto within = [](const Rational& est, const Rational& exact) {
        return exact > 0 && boost::multiprecision::abs(est - exact) <= exact / 10;
    };
    const Rational r44 = rho_full(4, c, 2, 7), r43 = rho_rank_deficit(4, c, 2, 7);
    const bool k4 = within(r44, h4.count(4)) && within(r43, h4.count(3));
    return {sums && k3 && k4, std::string("sums ") + (sums ? "exact" : "mismatch") + ", k=3 " + h3.count(3).str() + "/" +
                                  h3.count(2).str() + ", k=4 estimate " + r44.str() + " vs " + h4.count(4).str() + ", " +
                                  r43.str() + " vs " + h4.count(3).str()};
}

Outcome linear_extension() {
    const auto r = testing::check_reduced_extensions(2024);
    const auto sr = testing::check_shiftrows_extension(200, 7);
    return {r.ok() && sr.ok(), std::to_string(r.exact) + "/" + std::to_string(r.maps) + " maps exact, " +
                                   std::to_string(r.invertible) + " invertible, " + std::to_string(r.homomorphic) + "/" +
                                   std::to_string(r.pairs) + " products, ShiftRows " +
                                   std::to_string(sr.agree) + "/" + std::to_string(sr.samples)};
}

Outcome extendibility() {
    using namespace extend;
    const FieldSpec f(2, 0x7);
    const FieldMatrix good(f, {{1, 2}, {2, 1}}), bad(f, {{1, 1}, {0, 1}});
    const auto tc = theorem_conditions(good);
    const auto eq = check_related_equivalence(good);
    const auto panel = validate_corollary(good, 20, 1);
    const auto tb = theorem_conditions(bad);
    const auto rb = validate_corollary(bad, 20, 1);
    bool witness = false;
    if (rb.first_failure) {
        const auto p = related_params(bad);
        BitVector lhs(p.s()), rhs(p.s());
        for (const auto& v : rb.first_failure->witness) {
            lhs ^= embed::alpha(p, v);
            rhs ^= embed::alpha(p, rb.first_failure_map(v));
        }
        witness = rb.first_failure->witness.size() == 4 && lhs.is_zero() != rhs.is_zero();
    }
    const bool ok = tc.verdict && eq.quadruples == 256 && eq.equivalent() && panel.maps_tested == 23 &&
                    panel.all_extendible() && !tb.minors_ok && witness;
    return {ok, std::to_string(eq.totally_related) + " totally related = " + std::to_string(eq.coupled) +
                    " coupled, panel " + std::to_string(panel.extendible) + "/" + std::to_string(panel.maps_tested) +
                    ", zero-minor witness " + (witness ? "found" : "missing")};
}

Outcome bounds_checks() {
    using namespace bounds;
    const auto fb = check_factorial_bracket();
    const auto ind = check_induction_inequality(2, 128);
    const auto cnt = min_linearization_exponent_by_counting();
    const auto ord = min_linearization_exponent_by_order();
    const auto sti = min_linearization_exponent_by_stirling();
    const bool ok = fb.verdict && ind.verdict && cnt.report.verdict && cnt.min_exponent == 67 && ord.report.verdict &&
                    ord.min_exponent == 67 && sti.report.informational && sti.min_exponent == 68;
    return {ok, "counting l >= " + std::to_string(cnt.min_exponent) + ", order l >= " +
                    std::to_string(ord.min_exponent) + ", Stirling (info) l >= " + std::to_string(sti.min_exponent)};
}

Outcome calibration() {
    using namespace rankstats;
    const auto p = embed::EmbeddingParams::eps(algebra::FieldSpec::standard(2), 2);
    const auto cal = calibrate(admissible_row_sampler(p, 4), exhaustive_admissible_ranks(p, 4), 200, 1000, 0.01, 1);
    const bool rate_ok = cal.rate() >= 0.005 && cal.rate() <= 0.02;

    const auto h = monte_carlo_ranks(constant_rank_sampler(16, 16, 12, 5), 200, 1);
    const auto chi = chi_square_compare(h, migler_distribution(16, 16), 0.01);
    const bool degenerate = !chi.insufficient && chi.p_value < 1e-9;

    auto cfg = cli::parse_config("cipher = reduced\nreduced_m = 4\nreduced_b = 4\nmatrices = 100\n"
                                 "baseline_trials = 5000\nvalidation_runs = 100\nseed = 31337");
    const bool same = cli::strip_timing(cli::run_distinguisher(cfg)) == cli::strip_timing(cli::run_distinguisher(cfg));

    char buf[160];
    std::snprintf(buf, sizeof buf, "rejection rate %.3f over %zu runs, constant-rank p = %.3g, reports %s", cal.rate(),
                  cal.runs, chi.p_value, same ? "identical" : "differ");
    return {rate_ok && degenerate && same, buf};
}

}  // namespace

int main(int argc, char** argv) {
    bool long_run = false;
    for (int i = 1; i < argc; ++i) {
        const std::string_view a = argv[i];
        if (a == "--long") {
            long_run = true;
        } else {
            std::fprintf(stderr, "usage: %s [--long]\n", argv[0]);
            return 2;
        }
    }
    const std::vector<Criterion> criteria = {
        {1, "cipher correctness", 5, cipher_correctness},
        {2, "dimension claims", long_run ? 600.0 : 60.0, [&] { return dimensions(long_run); }},
        {3, "order claims", 120, orders},
        {4, "counterexamples", 1, counterexamples},
        {5, "counting formulas", 60, counting},
        {6, "linear extension", 30, linear_extension},
        {7, "extendibility", 120, extendibility},
        {8, "bounds", 5, bounds_checks},
        {9, "distinguisher calibration", 600, calibration},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = s < c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s criterion %d (%s): %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), s, c.limit_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
