#include <doctest.h>

#include <random>

#include "skewtori/exact_linalg.hpp"

using namespace skewtori;

namespace {

const imat2 cat{2, 1, 1, 1};     // det +1, trace 3
const imat2 fib{1, 1, 1, 0};     // det -1, trace 1
const imat2 rot{0, -1, 1, 0};    // rotation by pi/2
const imat2 shear{1, 1, 0, 1};   // parabolic
const imat2 swap_xy{0, 1, 1, 0}; // involution, det -1, trace 0

imat2 random_unimodular(std::mt19937& rng, int words) {
    // Random product of elementary shears: always det +1.
    std::uniform_int_distribution<int> power(-3, 3);
    imat2 m = imat2::identity();
    for (int i = 0; i < words; ++i) {
        const int k = power(rng);
        const imat2 g = i % 2 == 0 ? imat2{1, k, 0, 1} : imat2{1, 0, k, 1};
        m = m * g;
    }
    return m;
}

bool is_identity(const rmat2& m) {
    return m.a == 1 && m.b == 0 && m.c == 0 && m.d == 1;
}

double entry_gap(const dmat2& l, const dmat2& r) { return entry_max(l - r); }

} // namespace

TEST_CASE("determinant and trace on pinned matrices") {
    CHECK(det2(cat) == 1);
    CHECK(trace2(cat) == 3);
    CHECK(det2(fib) == -1);
    CHECK(trace2(fib) == 1);
    CHECK(det2(rot) == 1);
    CHECK(trace2(rot) == 0);
    CHECK(det2(imat2{2, 2, 1, 1}) == 0);
    CHECK(det2(imat2{3, 1, 2, 1}) == 1);
}

TEST_CASE("matrix powers: pinned values, identity at zero, Fibonacci growth") {
    CHECK(mat_pow(cat, 0) == imat2::identity());
    CHECK(mat_pow(cat, 1) == cat);
    CHECK(mat_pow(cat, 2) == imat2{5, 3, 3, 2});
    CHECK(mat_pow(cat, 4) == imat2{34, 21, 21, 13});

    // fib^n carries the Fibonacci numbers; F(100) overflows 64-bit ints,
    // so this pins the arbitrary-precision path.
    const imat2 f100 = mat_pow(fib, 100);
    CHECK(f100.b == bigint("354224848179261915075"));
    CHECK(f100.a == bigint("573147844013817084101"));
    CHECK(det2(f100) == 1); // (-1)^100
}

TEST_CASE("matrix powers compose: A^(m+n) = A^m A^n") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> exp(0, 20);
    for (int trial = 0; trial < 50; ++trial) {
        const imat2 a = random_unimodular(rng, 6);
        const int m = exp(rng), n = exp(rng);
        CHECK(mat_pow(a, m + n) == mat_pow(a, m) * mat_pow(a, n));
    }
    CHECK_THROWS_AS(mat_pow(cat, -1), std::invalid_argument);
}

TEST_CASE("hyperbolicity classification is exact and total") {
    CHECK(classify_hyperbolic(cat) == map_class::hyperbolic);
    CHECK(classify_hyperbolic(fib) == map_class::hyperbolic);
    CHECK(classify_hyperbolic(imat2{3, 1, 2, 1}) == map_class::hyperbolic);
    CHECK(classify_hyperbolic(imat2{-2, -1, -1, -1}) == map_class::hyperbolic);

    CHECK(classify_hyperbolic(rot) == map_class::not_hyperbolic);
    CHECK(classify_hyperbolic(shear) == map_class::not_hyperbolic);
    CHECK(classify_hyperbolic(swap_xy) == map_class::not_hyperbolic);
    CHECK(classify_hyperbolic(imat2::identity()) == map_class::not_hyperbolic);
    CHECK(classify_hyperbolic(imat2{-1, 0, 0, -1}) == map_class::not_hyperbolic);

    CHECK(classify_hyperbolic(imat2{2, 2, 1, 1}) == map_class::not_unimodular);
    CHECK(classify_hyperbolic(imat2{2, 0, 0, 2}) == map_class::not_unimodular);
    CHECK(classify_hyperbolic(imat2{0, 0, 0, 0}) == map_class::not_unimodular);
}

TEST_CASE("classification agrees with the eigenvalue moduli") {
    std::mt19937 rng(7);
    int hyperbolic_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const imat2 a = random_unimodular(rng, 5);
        const map_class c = classify_hyperbolic(a);
        REQUIRE(c != map_class::not_unimodular);
        if (c == map_class::hyperbolic) {
            ++hyperbolic_seen;
            const hyperbolic_splitting s = eigen_split(a);
            CHECK(std::fabs(s.lambda_u) > 1.0);
            CHECK(std::fabs(s.lambda_s) < 1.0);
        } else {
            // det +1 and |trace| <= 2: spectrum on the unit circle.
            CHECK(boost::multiprecision::abs(trace2(a)) <= 2);
        }
    }
    CHECK(hyperbolic_seen > 100); // the sample is not degenerate
}

TEST_CASE("rational inverse is exact and normalises denominators") {
    for (const imat2& m : {cat, fib, imat2{3, 1, 2, 1}, imat2{-4, 7, 3, -5}, imat2{10, -3, 7, 2}}) {
        const rmat2 inv = rational_inverse(m);
        const rmat2 as_rat{bigrat(m.a), bigrat(m.b), bigrat(m.c), bigrat(m.d)};
        CHECK(is_identity(as_rat * inv));
        // boost's canonical form wants positive denominators; the det < 0
        // branch must not feed a negative one to the constructor.
        CHECK(boost::multiprecision::denominator(inv.a) > 0);
        CHECK(boost::multiprecision::denominator(inv.d) > 0);
    }
    CHECK_THROWS_AS(rational_inverse(imat2{1, 2, 2, 4}), singular_matrix);
    CHECK_THROWS_AS(rational_inverse(imat2{0, 0, 0, 0}), singular_matrix);
}

TEST_CASE("rational inverse of I - A matches the pinned degree ratios") {
    // (I - cat)^{-1} = [[0, 1], [1, -1]] / det where det(I - cat) = -1.
    const rmat2 inv = rational_inverse(imat2::identity() - cat);
    CHECK(inv.a == 0);
    CHECK(inv.b == -1);
    CHECK(inv.c == -1);
    CHECK(inv.d == 1);
}

TEST_CASE("smith normal form: pinned decomposition properties") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> entry(-50, 50);
    int nonsingular = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const imat2 m{entry(rng), entry(rng), entry(rng), entry(rng)};
        if (det2(m) == 0) {
            CHECK_THROWS_AS(smith_normal_form(m), singular_matrix);
            continue;
        }
        ++nonsingular;
        const smith_form s = smith_normal_form(m);
        CHECK(s.u * m * s.v == s.d);
        CHECK(s.d.b == 0);
        CHECK(s.d.c == 0);
        CHECK(s.d.a > 0);
        CHECK(s.d.d > 0);
        CHECK(s.d.d % s.d.a == 0);
        CHECK(s.d.a * s.d.d == boost::multiprecision::abs(det2(m)));
        CHECK(boost::multiprecision::abs(det2(s.u)) == 1);
        CHECK(boost::multiprecision::abs(det2(s.v)) == 1);
    }
    CHECK(nonsingular > 900);
}

TEST_CASE("smith normal form is deterministic") {
    const imat2 m = mat_pow(cat, 3) - imat2::identity();
    const smith_form s1 = smith_normal_form(m);
    const smith_form s2 = smith_normal_form(m);
    CHECK(s1.u == s2.u);
    CHECK(s1.d == s2.d);
    CHECK(s1.v == s2.v);
    CHECK(s1.d.a * s1.d.d == 16); // |det(cat^3 - I)|
}

TEST_CASE("eigen splitting: pinned eigenvalues and spectral identities") {
    const hyperbolic_splitting s = eigen_split(cat);
    CHECK(s.lambda_u == doctest::Approx(2.618033988749895).epsilon(1e-14));
    CHECK(s.lambda_s == doctest::Approx(0.3819660112501051).epsilon(1e-13));

    const hyperbolic_splitting f = eigen_split(fib);
    CHECK(f.lambda_u == doctest::Approx(1.618033988749895).epsilon(1e-14));
    CHECK(f.lambda_s == doctest::Approx(-0.618033988749895).epsilon(1e-13));

    CHECK_THROWS_AS(eigen_split(rot), not_hyperbolic);
    CHECK_THROWS_AS(eigen_split(shear), not_hyperbolic);
    CHECK_THROWS_AS(eigen_split(imat2{2, 2, 1, 1}), not_hyperbolic);
}

TEST_CASE("eigen splitting invariants on random hyperbolic matrices") {
    std::mt19937 rng(99);
    int checked = 0;
    while (checked < 60) {
        const imat2 a = random_unimodular(rng, 6);
        if (classify_hyperbolic(a) != map_class::hyperbolic) continue;
        ++checked;
        const hyperbolic_splitting s = eigen_split(a);
        const dmat2 ad = to_double(a);

        // Eigenvector equations.
        CHECK(inf_norm(ad * s.v_u - s.lambda_u * s.v_u) <= 1e-9 * std::fabs(s.lambda_u));
        CHECK(inf_norm(ad * s.v_s - s.lambda_s * s.v_s) <= 1e-9);

        // Trace and determinant through the spectrum.
        CHECK(s.lambda_u + s.lambda_s ==
              doctest::Approx(trace2(a).convert_to<double>()).epsilon(1e-12));
        CHECK(s.lambda_u * s.lambda_s ==
              doctest::Approx(det2(a).convert_to<double>()).epsilon(1e-12));

        // Projections: complementary idempotents that reassemble A.
        CHECK(entry_gap(s.p_u + s.p_s, dmat2::identity()) <= 1e-12);
        CHECK(entry_gap(s.p_u * s.p_u, s.p_u) <= 1e-12);
        CHECK(entry_gap(s.p_s * s.p_s, s.p_s) <= 1e-12);
        CHECK(entry_max(s.p_u * s.p_s) <= 1e-12);
        const dmat2 rebuilt = s.lambda_u * s.p_u + s.lambda_s * s.p_s;
        CHECK(entry_gap(rebuilt, ad) <= 1e-9 * std::max(1.0, entry_max(ad)));
    }
}
