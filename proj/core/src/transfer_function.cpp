#include "robsyn/transfer_function.hpp"

#include <algorithm>
#include <cmath>

namespace robsyn {

namespace {

std::vector<double> trim_leading_zeros(std::vector<double> c) {
    std::size_t k = 0;
    while (k + 1 < c.size() && c[k] == 0.0) ++k;
    c.erase(c.begin(), c.begin() + static_cast<long>(k));
    return c;
}

}  // namespace

RationalTF::RationalTF(std::vector<double> n, std::vector<double> d)
    : num(trim_leading_zeros(std::move(n))), den(trim_leading_zeros(std::move(d))) {
    if (den.empty() || num.empty()) {
        throw std::invalid_argument("RationalTF: empty coefficient list");
    }
    if (den.front() == 0.0) {
        throw std::invalid_argument("RationalTF: denominator leading coefficient is zero");
    }
    const bool num_is_zero = std::all_of(num.begin(), num.end(), [](double c) { return c == 0.0; });
    if (!num_is_zero && num.size() > den.size()) {
        throw std::invalid_argument("RationalTF: improper transfer function (deg num > deg den)");
    }
    if (num_is_zero) num = {0.0};
}

Complex polyval(const std::vector<double>& coeffs, Complex s) {
    Complex acc(0.0, 0.0);
    for (double c : coeffs) acc = acc * s + c;
    return acc;
}

std::vector<double> polymul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

Complex RationalTF::evaluate(Complex s) const {
    return polyval(num, s) / polyval(den, s);
}

Complex RationalTF::at_omega(double omega) const {
    return evaluate(Complex(0.0, omega));
}

RationalTF RationalTF::inverse() const {
    if (num.size() != den.size() || num.front() == 0.0) {
        throw std::invalid_argument("RationalTF::inverse: entry must be biproper");
    }
    return RationalTF(den, num);
}

StateSpace tf_to_ss(const RationalTF& g) {
    // Normalize so the denominator is monic: s^n + a1 s^{n-1} + ... + an.
    const double lead = g.den.front();
    std::vector<double> a(g.den.size());
    for (std::size_t i = 0; i < g.den.size(); ++i) a[i] = g.den[i] / lead;

    const int n = static_cast<int>(a.size()) - 1;

    // Pad numerator to length n+1: b0 s^n + ... + bn.
    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    const std::size_t off = b.size() - g.num.size();
    for (std::size_t i = 0; i < g.num.size(); ++i) b[off + i] = g.num[i] / lead;

    Matrix D(1, 1);
    D(0, 0) = b[0];

    if (n == 0) {
        return StateSpace::static_gain(D);
    }

    // Controllable canonical form; C carries the strictly proper residue
    // coefficients b_i - a_i b_0 aligned with ascending state powers.
    Matrix A = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) A(i, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) A(n - 1, j) = -a[static_cast<std::size_t>(n - j)];

    Matrix B = Matrix::Zero(n, 1);
    B(n - 1, 0) = 1.0;

    Matrix C = Matrix::Zero(1, n);
    for (int j = 0; j < n; ++j) {
        const std::size_t i = static_cast<std::size_t>(n - j);
        C(0, j) = b[i] - a[i] * b[0];
    }

    return StateSpace(std::move(A), std::move(B), std::move(C), std::move(D));
}

TFMatrix::TFMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r * c)) {
    if (r <= 0 || c <= 0) {
        throw std::invalid_argument("TFMatrix: dimensions must be positive");
    }
}

RationalTF& TFMatrix::at(int i, int j) {
    return entries[static_cast<std::size_t>(i * cols + j)];
}

const RationalTF& TFMatrix::at(int i, int j) const {
    return entries[static_cast<std::size_t>(i * cols + j)];
}

TFMatrix TFMatrix::diagonal(const std::vector<RationalTF>& diag) {
    const int n = static_cast<int>(diag.size());
    TFMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = diag[static_cast<std::size_t>(i)];
    return m;
}

ComplexMatrix TFMatrix::at_omega(double omega) const {
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = at(i, j).at_omega(omega);
    }
    return m;
}

StateSpace tf_to_ss(const TFMatrix& m) {
    int n_total = 0;
    std::vector<StateSpace> realized;
    realized.reserve(m.entries.size());
    for (const auto& e : m.entries) {
        realized.push_back(tf_to_ss(e));
        n_total += realized.back().states();
    }

    Matrix A = Matrix::Zero(n_total, n_total);
    Matrix B = Matrix::Zero(n_total, m.cols);
    Matrix C = Matrix::Zero(m.rows, n_total);
    Matrix D = Matrix::Zero(m.rows, m.cols);

    int offset = 0;
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            const StateSpace& e = realized[static_cast<std::size_t>(i * m.cols + j)];
            const int ne = e.states();
            A.block(offset, offset, ne, ne) = e.A;
            B.block(offset, j, ne, 1) = e.B;
            C.block(i, offset, 1, ne) = e.C;
            D(i, j) += e.D(0, 0);
            offset += ne;
        }
    }
    return StateSpace(std::move(A), std::move(B), std::move(C), std::move(D));
}

}  // namespace robsyn
