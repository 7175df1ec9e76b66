#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pipe/graph.hpp"

namespace ppe {

/// Dense row-major matrix; small n only.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix multiply: shape mismatch");
    Matrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            double v = x(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
        }
    return z;
}

/// Dense symmetric matrix; symmetry is enforced exactly at construction.
struct SymMatrix {
    int n = 0;
    Matrix m;

    SymMatrix() = default;
    explicit SymMatrix(Matrix mat) : n(mat.rows), m(std::move(mat)) {
        if (m.rows != m.cols) throw std::invalid_argument("SymMatrix: not square");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (m(i, j) != m(j, i)) throw std::invalid_argument("SymMatrix: not symmetric");
    }

    double operator()(int i, int j) const { return m(i, j); }
};

inline Matrix adjacency_matrix(const Graph& g) {
    Matrix a(g.n, g.n);
    for (auto [u, v] : g.edges) a(u, v) = a(v, u) = 1.0;
    return a;
}

/// Normalized Laplacian. Diagonal is 1 for positive-degree vertices and 0 for
/// isolated ones, so the zero eigenvalue has multiplicity beta0.
inline SymMatrix normalized_laplacian(const Graph& g) {
    Matrix m(g.n, g.n);
    for (int v = 0; v < g.n; ++v) m(v, v) = g.degree(v) > 0 ? 1.0 : 0.0;
    for (auto [u, v] : g.edges) {
        double w = -1.0 / std::sqrt(static_cast<double>(g.degree(u)) * g.degree(v));
        m(u, v) = m(v, u) = w;
    }
    return SymMatrix(std::move(m));
}

struct EigenDecomposition {
    std::vector<double> values;           // ascending
    Matrix vectors;                       // column i pairs with values[i]
    std::vector<std::pair<int, int>> groups;  // [first, last] index ranges of equal eigenvalues
};

/// Grouping tolerance for equal eigenvalues (absolute).
inline constexpr double kEigGroupTol = 1e-8;

/// Cyclic Jacobi eigendecomposition for symmetric matrices. Sweeps until the
/// off-diagonal Frobenius norm is <= 1e-12 * ||M||_F; eigenvalues ascending,
/// ties keep original column order. Throws on non-convergence with the
/// residual in the message.
inline EigenDecomposition eigh(const SymMatrix& sm) {
    const int n = sm.n;
    Matrix a = sm.m;
    Matrix u = Matrix::identity(n);
    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) norm += a(i, j) * a(i, j);
    norm = std::sqrt(norm);
    const double target = 1e-12 * norm;
    const int max_sweeps = 60;
    double off = 0.0;
    bool converged = (n <= 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
        off = std::sqrt(off);
        if (off <= target) {
            converged = true;
            break;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::fabs(apq) == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);
                double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        double arp = a(r, p), arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    double urp = u(r, p), urq = u(r, q);
                    u(r, p) = urp - s * (urq + tau * urp);
                    u(r, q) = urq + s * (urp - tau * urq);
                }
            }
    }
    if (!converged) {
        // final residual check after the last sweep
        off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
        off = std::sqrt(off);
        if (off > target)
            throw std::runtime_error("eigh: Jacobi did not converge, residual " +
                                     std::to_string(off));
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x) < a(y, y); });
    EigenDecomposition d;
    d.values.resize(n);
    d.vectors = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        d.values[i] = a(order[i], order[i]);
        for (int r = 0; r < n; ++r) d.vectors(r, i) = u(r, order[i]);
    }
    int start = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || std::fabs(d.values[i] - d.values[i - 1]) > kEigGroupTol) {
            d.groups.emplace_back(start, i - 1);
            start = i;
        }
    }
    return d;
}

/// Random-walk matrix D^{-1} A; rows of isolated vertices are all zero.
inline Matrix rw_matrix(const Graph& g) {
    Matrix r(g.n, g.n);
    for (int v = 0; v < g.n; ++v) {
        int d = g.degree(v);
        if (d == 0) continue;
        for (int u : g.adj[v]) r(v, u) = 1.0 / d;
    }
    return r;
}

/// Exact dense power by repeated multiplication, k >= 1.
inline Matrix rw_power(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("rw_power: k must be >= 1");
    Matrix r = rw_matrix(g);
    Matrix p = r;
    for (int i = 1; i < k; ++i) p = p * r;
    return p;
}

inline double rw_power_entry(const Graph& g, int k, int u, int v) {
    return rw_power(g, k)(u, v);
}

}  // namespace ppe
