#pragma once

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "core.hpp"

namespace qwit::state {

// Polarization convention: |H> = (1,0)^T, |V> = (0,1)^T, |D/A> = (|H> +- |V>)/sqrt2,
// |L/R> = (|H> +- i|V>)/sqrt2. With these choices sigma_1 = |D><D| - |A><A|,
// sigma_2 = |L><L| - |R><R| and sigma_3 = |H><H| - |V><V| are the standard Pauli
// matrices. Two-qubit basis order is |HH>, |HV>, |VH>, |VV> (row-major) everywhere.

inline Mat2 pauli(int i) {
    Mat2 s;
    switch (i) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli: index must be 1, 2 or 3");
    }
    return s;
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

inline Vec4c ket(int a, int b) {  // a, b in {0 = H, 1 = V}
    Vec4c v = Vec4c::Zero();
    v(2 * a + b) = 1.0;
    return v;
}

inline Vec4c psi_minus() {
    return (ket(0, 1) - ket(1, 0)) / std::sqrt(2.0);
}

inline Vec4c phi_plus() {
    return (ket(0, 0) + ket(1, 1)) / std::sqrt(2.0);
}

// Validated two-qubit density matrix. Construction enforces hermiticity,
// unit trace and positive semidefiniteness within fixed tolerances; the
// entries are stored exactly as given.
class DensityMatrix {
  public:
    explicit DensityMatrix(const Mat4& entries) : m_(entries) {
        double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
        if (herm > 1e-12)
            throw not_a_state_error("matrix is not Hermitian", herm);
        double tr_dev = std::abs(m_.trace() - cplx(1.0, 0.0));
        if (tr_dev > 1e-12)
            throw not_a_state_error("matrix trace differs from 1", tr_dev);
        Eigen::SelfAdjointEigenSolver<Mat4> es(m_, Eigen::EigenvaluesOnly);
        double lo = es.eigenvalues().minCoeff();
        if (lo < -1e-10)
            throw not_a_state_error("matrix is not positive semidefinite", lo);
    }

    static DensityMatrix from_pure(const Vec4c& psi) {
        Vec4c n = psi / psi.norm();
        return DensityMatrix(n * n.adjoint());
    }

    const Mat4& entries() const { return m_; }

    double purity() const { return (m_ * m_).trace().real(); }

  private:
    Mat4 m_;
};

struct BlochDecomposition {
    Vec3 x;
    Vec3 y;
    Mat3 T;
};

inline BlochDecomposition bloch_decompose(const DensityMatrix& rho) {
    const Mat4& m = rho.entries();
    const Mat2 id = Mat2::Identity();
    BlochDecomposition d;
    for (int i = 1; i <= 3; ++i) {
        d.x(i - 1) = (m * kron(pauli(i), id)).trace().real();
        d.y(i - 1) = (m * kron(id, pauli(i))).trace().real();
        for (int j = 1; j <= 3; ++j)
            d.T(i - 1, j - 1) = (m * kron(pauli(i), pauli(j))).trace().real();
    }
    return d;
}

inline DensityMatrix bloch_compose(const BlochDecomposition& d) {
    const Mat2 id = Mat2::Identity();
    Mat4 m = Mat4::Identity();
    for (int i = 1; i <= 3; ++i) {
        m += d.x(i - 1) * kron(pauli(i), id);
        m += d.y(i - 1) * kron(id, pauli(i));
        for (int j = 1; j <= 3; ++j)
            m += d.T(i - 1, j - 1) * kron(pauli(i), pauli(j));
    }
    return DensityMatrix(0.25 * m);
}

enum class Subsystem { a, b };

// Reduced state of the kept subsystem.
inline Mat2 partial_trace(const DensityMatrix& rho, Subsystem keep) {
    const Mat4& m = rho.entries();
    Mat2 out = Mat2::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                out(i, j) += (keep == Subsystem::a) ? m(2 * i + k, 2 * j + k)
                                                    : m(2 * k + i, 2 * k + j);
    return out;
}

inline Mat4 partial_transpose(const DensityMatrix& rho, Subsystem which) {
    const Mat4& m = rho.entries();
    Mat4 out;
    for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib)
            for (int ja = 0; ja < 2; ++ja)
                for (int jb = 0; jb < 2; ++jb) {
                    if (which == Subsystem::b)
                        out(2 * ia + ib, 2 * ja + jb) = m(2 * ia + jb, 2 * ja + ib);
                    else
                        out(2 * ia + ib, 2 * ja + jb) = m(2 * ja + ib, 2 * ia + jb);
                }
    return out;
}

enum class Family { werner, horodecki, pure };

struct StateFamily {
    Family kind;
    double p;
};

inline DensityMatrix make_family(const StateFamily& f) {
    if (!(f.p >= 0.0 && f.p <= 1.0))
        throw std::invalid_argument("make_family: p must lie in [0,1]");
    const Vec4c sm = psi_minus();
    switch (f.kind) {
        case Family::werner: {
            Mat4 m = (1.0 - f.p) / 4.0 * Mat4::Identity() + f.p * (sm * sm.adjoint());
            return DensityMatrix(m);
        }
        case Family::horodecki: {
            Vec4c hh = ket(0, 0);
            Mat4 m = f.p * (hh * hh.adjoint()) + (1.0 - f.p) * (sm * sm.adjoint());
            return DensityMatrix(m);
        }
        case Family::pure: {
            Vec4c v = std::sqrt(f.p) * ket(0, 0) + std::sqrt(1.0 - f.p) * ket(1, 1);
            return DensityMatrix::from_pure(v);
        }
    }
    throw std::invalid_argument("make_family: unknown family tag");
}

struct RandomStateMeasure {
    enum class Kind { haar_pure, hilbert_schmidt, induced };
    Kind kind = Kind::hilbert_schmidt;
    int ancilla_dim = 4;  // K, used by the induced measure only

    static RandomStateMeasure haar_pure() { return {Kind::haar_pure, 4}; }
    static RandomStateMeasure hilbert_schmidt() { return {Kind::hilbert_schmidt, 4}; }
    static RandomStateMeasure induced(int k) {
        if (k < 1) throw std::invalid_argument("induced measure: K must be >= 1");
        return {Kind::induced, k};
    }
};

inline DensityMatrix random_state(const RandomStateMeasure& measure, std::mt19937_64& stream) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto draw = [&]() {
        double re = gauss(stream);
        double im = gauss(stream);
        return cplx(re, im);
    };
    if (measure.kind == RandomStateMeasure::Kind::haar_pure) {
        Vec4c psi;
        for (int i = 0; i < 4; ++i) psi(i) = draw();
        return DensityMatrix::from_pure(psi);
    }
    int k = (measure.kind == RandomStateMeasure::Kind::hilbert_schmidt) ? 4 : measure.ancilla_dim;
    Eigen::MatrixXcd g(4, k);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < k; ++j) g(i, j) = draw();
    Mat4 w = g * g.adjoint();
    return DensityMatrix(w / w.trace());
}

// Kronecker product of two states with the four qubit slots rearranged:
// input slot k (slots 0,1 from rho1 and 2,3 from rho2) ends up at slot
// perm[k] of the output index.
inline Mat16 tensor_and_permute(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                const std::array<int, 4>& perm) {
    std::array<bool, 4> seen{};
    for (int p : perm) {
        if (p < 0 || p > 3 || seen[p])
            throw std::invalid_argument("tensor_and_permute: perm must be a bijection on 4 slots");
        seen[p] = true;
    }
    auto relocate = [&perm](int n) {
        int out = 0;
        for (int k = 0; k < 4; ++k) {
            int bit = (n >> (3 - k)) & 1;
            out |= bit << (3 - perm[k]);
        }
        return out;
    };
    const Mat4& m1 = rho1.entries();
    const Mat4& m2 = rho2.entries();
    Mat16 out;
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c)
            out(relocate(r), relocate(c)) = m1(r >> 2, c >> 2) * m2(r & 3, c & 3);
    return out;
}

}  // namespace qwit::state
