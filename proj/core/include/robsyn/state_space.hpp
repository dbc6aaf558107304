#pragma once

#include <vector>

#include "robsyn/types.hpp"

namespace robsyn {

/// Dense continuous-time LTI realization (A, B, C, D).
///
/// All dimensions are validated on construction; n_x = 0 is permitted and
/// models a pure static gain y = D u.
struct StateSpace {
    Matrix A, B, C, D;

    StateSpace() : A(0, 0), B(0, 0), C(0, 0), D(0, 0) {}
    StateSpace(Matrix a, Matrix b, Matrix c, Matrix d);

    int states() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(D.cols()); }
    int outputs() const { return static_cast<int>(D.rows()); }

    /// Static system y = D u (n_x = 0).
    static StateSpace static_gain(const Matrix& d);
    /// Static identity pass-through of size n.
    static StateSpace identity(int n);
};

struct StabilityInfo {
    bool hurwitz;
    double spectral_abscissa;  // max Re(eig(A)); -inf for n_x = 0
};

/// C (jwI - A)^{-1} B + D.  Throws if jw is (numerically) an eigenvalue of A.
ComplexMatrix freq_response(const StateSpace& sys, double omega);

/// True iff all eigenvalues of A lie in the open left half-plane.
StabilityInfo is_hurwitz(const StateSpace& sys);

enum class Interconnect { Series, Parallel, Feedback };

/// Series: g2 after g1 (transfer g2*g1).  Parallel: outputs added.
/// Feedback: negative feedback, closed map g1 (I + g2 g1)^{-1}.
StateSpace interconnect(Interconnect kind, const StateSpace& g1, const StateSpace& g2);

StateSpace series(const StateSpace& g1, const StateSpace& g2);
StateSpace parallel(const StateSpace& g1, const StateSpace& g2);
StateSpace feedback(const StateSpace& fwd, const StateSpace& back);

/// Block-diagonal aggregate of the given systems.
StateSpace blkdiag(const std::vector<StateSpace>& systems);

/// Lower linear fractional transform: closes u = K y over the last n_meas
/// outputs and last n_ctrl inputs of p.  Throws on ill-posed loops.
StateSpace lft_lower(const StateSpace& p, const StateSpace& k, int n_meas, int n_ctrl);

/// Upper LFT closure at a single frequency: the first delta.cols() inputs
/// and delta.rows() outputs of p are the uncertainty channels (d, v).
ComplexMatrix lft_upper(const StateSpace& p, const ComplexMatrix& delta, double omega);

/// Frequency-wise upper closure of a response matrix M partitioned with
/// n_v uncertainty output rows and n_d uncertainty input columns.
ComplexMatrix close_upper(const ComplexMatrix& m, const ComplexMatrix& delta, int n_v, int n_d);

/// Largest singular value.
double sigma_max(const ComplexMatrix& m);
double sigma_max(const Matrix& m);

}  // namespace robsyn
