#pragma once

#include <vector>

#include "robsyn/state_space.hpp"
#include "robsyn/types.hpp"

namespace robsyn {

/// SISO rational transfer function, coefficients in descending powers of s.
/// Must be proper: deg(num) <= deg(den), den leading coefficient nonzero.
struct RationalTF {
    std::vector<double> num;
    std::vector<double> den;

    RationalTF() : num{0.0}, den{1.0} {}
    RationalTF(std::vector<double> n, std::vector<double> d);

    static RationalTF constant(double c) { return RationalTF({c}, {1.0}); }

    int num_degree() const { return static_cast<int>(num.size()) - 1; }
    int den_degree() const { return static_cast<int>(den.size()) - 1; }

    Complex evaluate(Complex s) const;
    Complex at_omega(double omega) const;

    /// Reciprocal den/num; requires a biproper entry (nonzero num lead).
    RationalTF inverse() const;
};

/// Horner evaluation of a polynomial given in descending powers.
Complex polyval(const std::vector<double>& coeffs, Complex s);

/// Polynomial product (descending powers).
std::vector<double> polymul(const std::vector<double>& a, const std::vector<double>& b);

/// Controllable-canonical realization of a proper rational function.
StateSpace tf_to_ss(const RationalTF& g);

/// Rectangular matrix of proper rational entries, row-major storage.
struct TFMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<RationalTF> entries;

    TFMatrix() = default;
    TFMatrix(int r, int c);

    RationalTF& at(int i, int j);
    const RationalTF& at(int i, int j) const;

    static TFMatrix diagonal(const std::vector<RationalTF>& diag);

    ComplexMatrix at_omega(double omega) const;
};

/// Realizes each entry in controllable-canonical form and aggregates:
/// output i sums entry (i, j) driven by input j.
StateSpace tf_to_ss(const TFMatrix& m);

}  // namespace robsyn
