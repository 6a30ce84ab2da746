#include "doctest.h"

#include "tbembed/extend.hpp"

using namespace tbembed;
using namespace tbembed::extend;

namespace {

const FieldSpec& gf4() {
    static const FieldSpec f(2, 0x7);
    return f;
}

FieldMatrix good_matrix() { return FieldMatrix(gf4(), {{1, 2}, {2, 1}}); }
FieldMatrix bad_matrix() { return FieldMatrix(gf4(), {{1, 1}, {0, 1}}); }

std::vector<std::uint64_t> identity_table(std::size_t n) {
    std::vector<std::uint64_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = i;
    return t;
}

}  // namespace

TEST_CASE("fit sextuples") {
    CHECK(fit_sextuples(2).empty());
    const auto s3 = fit_sextuples(3);
    REQUIRE(s3.size() == 2);
    CHECK(s3[0] == FitSextuple{1, 1, 1, 2, 2, 2});
    CHECK(s3[1] == FitSextuple{2, 1, 0, 3, 2, 1});
    CHECK(fit_cardinality(s3[0], 3) == 2);
    CHECK(fit_cardinality(s3[1], 3) == 4);
    for (const auto& s : fit_sextuples(4)) CHECK(valid_sextuple(s, 4));
}

TEST_CASE("determinant terms") {
    const FieldSpec f(3, 0xB);
    const FieldMatrix m(f, {{1, 2, 3}, {4, 5, 6}, {7, 1, 2}});
    const auto terms = determinant_terms(m);
    REQUIRE(terms.size() == 6);
    algebra::Elem sum = 0;
    for (auto t : terms) sum ^= t;
    CHECK(sum == m.determinant());
    CHECK(terms[0] == f.mul(1, f.mul(5, 2)));
}

TEST_CASE("theorem conditions") {
    const auto good = theorem_conditions(good_matrix());
    CHECK(good.det_ok);
    CHECK(good.minors_ok);
    CHECK(good.all_fit);
    CHECK(good.verdict);
    const auto bad = theorem_conditions(bad_matrix());
    CHECK_FALSE(bad.minors_ok);
    CHECK_FALSE(bad.verdict);
}

TEST_CASE("related quadruples") {
    const auto all = all_4_related(good_matrix());
    CHECK(all.size() == 256);
    for (const auto& q : all)
        if (is_coupled(q)) CHECK(is_totally_related(q));

    const auto g = check_related_equivalence(good_matrix());
    CHECK(g.quadruples == 256);
    CHECK(g.totally_related == 112);
    CHECK(g.coupled == 112);
    CHECK(g.equivalent());

    const auto b = check_related_equivalence(bad_matrix());
    CHECK(b.totally_related == 160);
    CHECK(b.coupled == 112);
    CHECK(b.mismatches == 48);
    REQUIRE(b.first_mismatch);
    CHECK(is_totally_related(*b.first_mismatch));
    CHECK_FALSE(is_coupled(*b.first_mismatch));
}

TEST_CASE("s-extendibility of simple maps") {
    const auto p = related_params(good_matrix());
    const auto id = table_map(4, identity_table(16));
    CHECK(is_s_extendible(id, p, 4).extendible);
    CHECK(is_s_extendible(id, p, 2).extendible);
    CHECK_THROWS(is_s_extendible(id, p, 3));
}

TEST_CASE("random permutations under plain eps") {
    const auto p = embed::EmbeddingParams::eps(gf4(), 2);
    std::size_t four = 0, two = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto sigma = random_state_permutation(4, seed);
        four += is_s_extendible(sigma, p, 4).extendible;
        two += is_s_extendible(sigma, p, 2).extendible;
    }
    CHECK(four == 0);
    CHECK(two == 20);
}

TEST_CASE("corollary panel") {
    const auto good = validate_corollary(good_matrix(), 20, 1);
    CHECK(good.maps_tested == 23);
    CHECK(good.all_extendible());

    const auto bad = validate_corollary(bad_matrix(), 20, 1);
    CHECK(bad.failed_maps.size() == 21);
    REQUIRE(bad.first_failure);
    const auto& w = bad.first_failure->witness;
    REQUIRE(w.size() == 4);
    CHECK(w[0].to_string() == "0000");
    CHECK(w[1].to_string() == "0001");
    CHECK(w[2].to_string() == "0100");
    CHECK(w[3].to_string() == "0101");
    CHECK(bad.first_failure->witness_forward);
    const auto p = related_params(bad_matrix());
    BitVector lhs(p.s()), rhs(p.s());
    for (const auto& v : w) {
        lhs ^= embed::alpha(p, v);
        rhs ^= embed::alpha(p, bad.first_failure_map(v));
    }
    CHECK(lhs.is_zero());
    CHECK_FALSE(rhs.is_zero());
}

TEST_CASE("sampled mode finds the same failure") {
    const auto bad = validate_corollary(bad_matrix(), 20, 1);
    REQUIRE(bad.first_failure);
    const auto p = related_params(bad_matrix());
    SExtendOptions opt;
    opt.sampled = true;
    opt.trials = 4000;
    const auto r = is_s_extendible(bad.first_failure_map, p, 4, opt);
    CHECK_FALSE(r.exhaustive);
    CHECK_FALSE(r.extendible);
}
