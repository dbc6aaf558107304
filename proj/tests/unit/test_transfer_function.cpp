#include <doctest.h>

#include <cmath>

#include "robsyn/transfer_function.hpp"
#include "test_util.hpp"

using namespace robsyn;

TEST_CASE("tf_to_ss canonical first-order lag") {
    const auto ss = tf_to_ss(RationalTF({1.0}, {1.0, 1.0}));
    CHECK(ss.states() == 1);
    CHECK(ss.A(0, 0) == doctest::Approx(-1.0));
    CHECK(ss.B(0, 0) == doctest::Approx(1.0));
    CHECK(ss.C(0, 0) == doctest::Approx(1.0));
    CHECK(ss.D(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("tf_to_ss with feedthrough by polynomial division") {
    // (0.5 s + 0.5)/(s + 0.005)
    const auto ss = tf_to_ss(RationalTF({0.5, 0.5}, {1.0, 0.005}));
    CHECK(ss.A(0, 0) == doctest::Approx(-0.005));
    CHECK(ss.B(0, 0) == doctest::Approx(1.0));
    CHECK(ss.C(0, 0) == doctest::Approx(0.4975));
    CHECK(ss.D(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("tf_to_ss of a constant is a static gain") {
    const auto ss = tf_to_ss(RationalTF({2.0}, {1.0}));
    CHECK(ss.states() == 0);
    CHECK(ss.D(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("improper transfer functions are rejected") {
    CHECK_THROWS_AS(RationalTF({1.0, 0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(RationalTF({1.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("high-frequency gain equals the leading-coefficient ratio") {
    // (s + 10)/(0.01 s + 21) -> 100 as w -> inf
    const RationalTF wt({1.0, 10.0}, {0.01, 21.0});
    CHECK(std::abs(wt.at_omega(1e9)) == doctest::Approx(100.0).epsilon(1e-6));
}

TEST_CASE("realization matches the rational function at random frequencies") {
    auto g = test::rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int nd = 1 + static_cast<int>(g() % 4);
        std::vector<double> den(static_cast<std::size_t>(nd) + 1);
        std::vector<double> num(static_cast<std::size_t>(g() % (nd + 1)) + 1);
        for (auto& c : den) c = test::uniform(g, 0.2, 2.0);
        for (auto& c : num) c = test::uniform(g, -2.0, 2.0);
        const RationalTF tf(num, den);
        const auto ss = tf_to_ss(tf);
        for (int i = 0; i < 20; ++i) {
            const double w = std::pow(10.0, test::uniform(g, -2.0, 3.0));
            const Complex expected = tf.at_omega(w);
            const Complex got = freq_response(ss, w)(0, 0);
            CHECK(std::abs(got - expected) <= 1e-10 * (1.0 + std::abs(expected)));
        }
    }
}

TEST_CASE("TFMatrix realization matches entrywise evaluation") {
    TFMatrix m(2, 2);
    m.at(0, 0) = RationalTF({0.5, 0.5}, {1.0, 0.005});
    m.at(0, 1) = RationalTF({1.0}, {1.0, 1.0});
    m.at(1, 0) = RationalTF::constant(0.25);
    m.at(1, 1) = RationalTF({1.0, 12.0}, {0.01, 36.0});
    const auto ss = tf_to_ss(m);
    for (double w : {1e-3, 0.1, 1.0, 50.0}) {
        const ComplexMatrix expected = m.at_omega(w);
        const ComplexMatrix got = freq_response(ss, w);
        CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("diagonal TFMatrix DC gains") {
    // The two sensitivity-weight entries have DC gains 0.5/0.005 = 100 and 0.1/0.002 = 50.
    const auto m = TFMatrix::diagonal(
        {RationalTF({0.5, 0.5}, {1.0, 0.005}), RationalTF({1.0 / 3.0, 0.1}, {1.0, 0.002})});
    const auto ss = tf_to_ss(m);
    const auto dc = freq_response(ss, 0.0);
    CHECK(dc(0, 0).real() == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(dc(1, 1).real() == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(std::abs(dc(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("biproper inverse round-trips") {
    const RationalTF d({1.0, 3.0}, {2.0, 5.0});
    const auto di = d.inverse();
    for (double w : {0.1, 1.0, 10.0}) {
        CHECK(std::abs(d.at_omega(w) * di.at_omega(w) - 1.0) < 1e-14);
    }
    CHECK_THROWS_AS((void)RationalTF({1.0}, {1.0, 1.0}).inverse(), std::invalid_argument);
}
