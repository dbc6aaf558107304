#include <doctest.h>

#include <cmath>

#include "robsyn/hinf.hpp"
#include "robsyn/transfer_function.hpp"
#include "test_util.hpp"

using namespace robsyn;

TEST_CASE("hinf_norm of a first-order lag is one") {
    const auto g = tf_to_ss(RationalTF({1.0}, {1.0, 1.0}));
    const auto r = hinf_norm(g, 1e-4);
    CHECK(r.value == doctest::Approx(1.0).epsilon(5e-4));
}

TEST_CASE("hinf_norm of a static gain is its largest singular value") {
    auto g = test::rng(13);
    const Matrix d = test::random_matrix(g, 3, 2);
    const auto r = hinf_norm(StateSpace::static_gain(d), 1e-3);
    CHECK(r.value == doctest::Approx(sigma_max(d)).epsilon(1e-12));
}

TEST_CASE("hinf_norm of a lightly damped resonator hits the analytic peak") {
    // 1/(s^2 + 0.2 s + 1): peak 1/(2 zeta sqrt(1 - zeta^2)) at zeta = 0.1
    const auto g = tf_to_ss(RationalTF({1.0}, {1.0, 0.2, 1.0}));
    const double zeta = 0.1;
    const double expected = 1.0 / (2.0 * zeta * std::sqrt(1.0 - zeta * zeta));
    const auto r = hinf_norm(g, 1e-4);
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-3));
    CHECK(r.peak_omega == doctest::Approx(std::sqrt(1.0 - 2.0 * zeta * zeta)).epsilon(1e-2));
}

TEST_CASE("hinf_norm rejects unstable systems") {
    const auto g = tf_to_ss(RationalTF({1.0}, {1.0, -1.0}));
    CHECK_THROWS_AS((void)hinf_norm(g), std::invalid_argument);
}

TEST_CASE("hinf_norm tracks a dense frequency sweep on random stable systems") {
    auto g = test::rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(g() % 5);
        const auto sys = test::random_stable_system(g, n, 2, 2, 0.6);
        const auto r = hinf_norm(sys, 1e-4);

        double sweep = sigma_max(sys.D);
        for (int i = 0; i < 2000; ++i) {
            const double w = std::pow(10.0, -3.0 + 6.0 * i / 1999.0);
            sweep = std::max(sweep, sigma_max(freq_response(sys, w)));
        }
        CHECK(r.value >= sweep * 0.99);
        CHECK(r.value <= sweep * 1.01);
    }
}

namespace {

// Mixed-sensitivity plant for G = 1/(s+1) with constant weight ws on the
// tracking error: channels (z, y | w, u), measurement y = w - G u.
StateSpace siso_mixed_sensitivity(double ws) {
    Matrix a(1, 1), b(1, 2), c(2, 1), d(2, 2);
    a << -1.0;
    b << 0.0, 1.0;
    c << -ws, -1.0;
    d << ws, 0.0, 1.0, 0.0;
    return StateSpace(a, b, c, d);
}

}  // namespace

TEST_CASE("SISO mixed sensitivity with constant weight attains gamma near the weight") {
    const auto p = siso_mixed_sensitivity(0.5);
    const auto res = synthesize_hinf(p, 1, 1, {});
    CHECK(res.gamma > 0.5);
    CHECK(res.gamma <= 0.5 * 1.02);

    const auto cl = lft_lower(p, res.controller, 1, 1);
    const auto certified = hinf_norm(cl, 1e-3);
    CHECK(certified.value <= res.gamma * (1.0 + 5e-3));
}

TEST_CASE("zero performance path returns the lower end of the gamma range") {
    Matrix a(1, 1), b(1, 2), c(2, 1), d(2, 2);
    a << -1.0;
    b << 0.0, 1.0;
    c << 0.0, -1.0;
    d << 0.0, 0.0, 1.0, 0.0;
    const StateSpace p(a, b, c, d);
    HinfOptions opts;
    opts.gamma_lo = 1e-3;
    const auto res = synthesize_hinf(p, 1, 1, opts);
    CHECK(res.gamma == doctest::Approx(1e-3));
    CHECK(is_hurwitz(lft_lower(p, res.controller, 1, 1)).hurwitz);
}

TEST_CASE("random plants synthesize and certify against the independent norm oracle") {
    auto g = test::rng(1234);
    int certified = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(g() % 3);
        const int m1 = 1 + static_cast<int>(g() % 2);
        const int m2 = 1 + static_cast<int>(g() % 2);
        const int p1 = 1 + static_cast<int>(g() % 2);
        const int p2 = 1 + static_cast<int>(g() % 2);

        const Matrix a = test::random_stable_a(g, n, 0.1);
        Matrix b(n, m1 + m2), c(p1 + p2, n), d(p1 + p2, m1 + m2);
        b << test::random_matrix(g, n, m1), test::random_matrix(g, n, m2);
        c << test::random_matrix(g, p1, n), test::random_matrix(g, p2, n);
        d.setZero();
        d.topLeftCorner(p1, m1) = 0.4 * test::random_matrix(g, p1, m1);  // nonzero D11 exercised
        d.topRightCorner(p1, m2) = test::random_matrix(g, p1, m2);
        d.bottomLeftCorner(p2, m1) = test::random_matrix(g, p2, m1);
        d.bottomRightCorner(p2, m2) = 0.3 * test::random_matrix(g, p2, m2);  // D22 loop shift
        const StateSpace p(a, b, c, d);

        HinfOptions opts;
        opts.tol = 1e-3;
        const auto res = synthesize_hinf(p, p2, m2, opts);
        const auto cl = lft_lower(p, res.controller, p2, m2);
        REQUIRE(is_hurwitz(cl).hurwitz);
        const auto nrm = hinf_norm(cl, 1e-3);
        CHECK(nrm.value <= res.gamma * (1.0 + 5e-3));
        ++certified;
    }
    CHECK(certified == 20);
}

TEST_CASE("enlarging the gamma range upper end does not change the result") {
    const auto p = siso_mixed_sensitivity(0.5);
    HinfOptions o1, o2;
    o1.gamma_hi = 1e4;
    o2.gamma_hi = 1e6;
    const auto r1 = synthesize_hinf(p, 1, 1, o1);
    const auto r2 = synthesize_hinf(p, 1, 1, o2);
    CHECK(r2.gamma <= r1.gamma * (1.0 + 1e-12));
}
