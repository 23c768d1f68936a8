#include "pronylab/numerics.hpp"

#include "pronylab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pronylab {

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cx& v : a_)
        s += std::norm(v);
    return std::sqrt(s);
}

CMatrix CMatrix::gram() const {
    CMatrix g(cols_, cols_);
    for (std::size_t i = 0; i < cols_; ++i)
        for (std::size_t j = i; j < cols_; ++j) {
            cx s = 0.0;
            for (std::size_t k = 0; k < rows_; ++k)
                s += std::conj((*this)(k, i)) * (*this)(k, j);
            g(i, j) = s;
            g(j, i) = std::conj(s);
        }
    return g;
}

std::vector<cx> CMatrix::apply(const std::vector<cx>& x) const {
    if (x.size() != cols_)
        fail(errc::dimension_mismatch, "matrix-vector size mismatch");
    std::vector<cx> y(rows_, cx(0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
        cx s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j)
            s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

EigenResult hermitian_eigen(const CMatrix& input) {
    const std::size_t n = input.rows();
    if (n != input.cols())
        fail(errc::invalid_argument, "hermitian_eigen: matrix not square");
    if (n > 512)
        fail(errc::invalid_argument, "hermitian_eigen: order exceeds 512");

    // Symmetrize: A <- (A + A^H)/2, real diagonal.
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cx(input(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            cx v = 0.5 * (input(i, j) + std::conj(input(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }

    CMatrix v(n, n);
    for (std::size_t i = 0; i < n; ++i)
        v(i, i) = 1.0;

    const double fro = std::max(a.frobenius_norm(), 1e-300);
    const int max_sweeps = 100;
    bool converged = (n <= 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-13 * fro) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq <= 1e-300)
                    continue;
                const cx phase = a(p, q) / apq;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cx jpq = s * phase;         // J[p][q]
                const cx jqp = -s * std::conj(phase); // J[q][p]

                // A <- J^H A J applied on rows/cols p and q.
                for (std::size_t k = 0; k < n; ++k) {
                    const cx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * jqp;
                    a(k, q) = akp * jpq + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cx(a(p, p).real(), 0.0);
                a(q, q) = cx(a(q, q).real(), 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    const cx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * c;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off) > 1e-11 * fro)
            fail(errc::numerical, "hermitian_eigen: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenResult r;
    r.values.resize(n);
    r.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        r.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i)
            r.vectors(i, k) = v(i, order[k]);
    }
    return r;
}

double sigma_min_via_gram(const CMatrix& a) {
    if (a.rows() < a.cols())
        fail(errc::invalid_argument, "sigma_min_via_gram: needs rows >= cols");
    if (a.cols() > 64)
        fail(errc::invalid_argument, "sigma_min_via_gram: more than 64 columns");
    CMatrix g = a.gram();
    EigenResult e = hermitian_eigen(g);
    double lam = e.values.front();
    const double fro2 = g.frobenius_norm();
    if (lam < 0.0) {
        if (lam < -1e-12 * std::max(fro2, 1.0))
            fail(errc::numerical, "sigma_min_via_gram: Gram matrix strongly indefinite");
        lam = 0.0;
    }
    return std::sqrt(lam);
}

SvdResult subspace_svd(const CMatrix& a) {
    if (std::min(a.rows(), a.cols()) > 256)
        fail(errc::invalid_argument, "subspace_svd: min dimension exceeds 256");
    EigenResult e = hermitian_eigen(a.gram());
    const std::size_t n = a.cols();
    SvdResult r;
    r.singular_values.resize(n);
    r.right_vectors = CMatrix(n, n);
    // Gram eigenvalues ascending; report singular values descending.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = n - 1 - k;
        r.singular_values[k] = std::sqrt(std::max(0.0, e.values[src]));
        for (std::size_t i = 0; i < n; ++i)
            r.right_vectors(i, k) = e.vectors(i, src);
    }
    return r;
}

std::vector<cx> least_squares(const CMatrix& a, const std::vector<cx>& b) {
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m)
        fail(errc::dimension_mismatch, "least_squares: rhs size mismatch");
    if (m < n)
        fail(errc::invalid_argument, "least_squares: underdetermined system");

    CMatrix r = a;
    std::vector<cx> y = b;
    double col_scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        // Householder vector for column j below the diagonal.
        double norm2 = 0.0;
        for (std::size_t i = j; i < m; ++i)
            norm2 += std::norm(r(i, j));
        const double alpha = std::sqrt(norm2);
        col_scale = std::max(col_scale, alpha);
        if (alpha <= 1e-14 * std::max(col_scale, 1e-300))
            fail(errc::numerical, "least_squares: rank-deficient matrix");

        cx pivot = r(j, j);
        const cx phase = (std::abs(pivot) > 0.0) ? pivot / std::abs(pivot) : cx(1.0);
        const cx beta = -phase * alpha;
        std::vector<cx> vvec(m - j);
        vvec[0] = pivot - beta;
        for (std::size_t i = j + 1; i < m; ++i)
            vvec[i - j] = r(i, j);
        double vnorm2 = 0.0;
        for (const cx& t : vvec)
            vnorm2 += std::norm(t);
        if (vnorm2 > 0.0) {
            for (std::size_t k = j; k < n; ++k) {
                cx dot = 0.0;
                for (std::size_t i = j; i < m; ++i)
                    dot += std::conj(vvec[i - j]) * r(i, k);
                const cx f = 2.0 * dot / vnorm2;
                for (std::size_t i = j; i < m; ++i)
                    r(i, k) -= f * vvec[i - j];
            }
            cx dot = 0.0;
            for (std::size_t i = j; i < m; ++i)
                dot += std::conj(vvec[i - j]) * y[i];
            const cx f = 2.0 * dot / vnorm2;
            for (std::size_t i = j; i < m; ++i)
                y[i] -= f * vvec[i - j];
        }
        r(j, j) = beta;
    }

    std::vector<cx> x(n);
    for (std::size_t jj = n; jj-- > 0;) {
        cx s = y[jj];
        for (std::size_t k = jj + 1; k < n; ++k)
            s -= r(jj, k) * x[k];
        if (std::abs(r(jj, jj)) <= 1e-14 * std::max(col_scale, 1e-300))
            fail(errc::numerical, "least_squares: rank-deficient matrix");
        x[jj] = s / r(jj, jj);
    }
    return x;
}

std::vector<cx> characteristic_polynomial(const CMatrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols() || n == 0 || n > 16)
        fail(errc::invalid_argument, "characteristic_polynomial: needs square order 1..16");
    // Faddeev-LeVerrier: M_1 = A, c_1 = -tr M_1; M_{k+1} = A (M_k + c_k I).
    std::vector<cx> c(n);
    CMatrix m = a;
    for (std::size_t k = 1; k <= n; ++k) {
        cx tr = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            tr += m(i, i);
        c[k - 1] = -tr / static_cast<double>(k);
        if (k == n)
            break;
        CMatrix mc = m;
        for (std::size_t i = 0; i < n; ++i)
            mc(i, i) += c[k - 1];
        CMatrix next(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cx s = 0.0;
                for (std::size_t l = 0; l < n; ++l)
                    s += a(i, l) * mc(l, j);
                next(i, j) = s;
            }
        m = next;
    }
    return c;
}

std::vector<cx> polynomial_roots(const std::vector<cx>& coeffs) {
    const std::size_t n = coeffs.size();
    if (n == 0)
        return {};
    auto eval = [&](cx z) {
        cx p = 1.0;
        for (const cx& c : coeffs)
            p = p * z + c;
        return p;
    };
    // Durand-Kerner from non-real, non-root-of-unity seeds.
    std::vector<cx> z(n);
    const cx seed(0.4, 0.9);
    cx w = seed;
    for (std::size_t i = 0; i < n; ++i, w *= seed)
        z[i] = w;
    for (int it = 0; it < 500; ++it) {
        double move = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cx denom = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    denom *= (z[i] - z[j]);
            if (std::abs(denom) < 1e-300)
                denom = cx(1e-300);
            const cx delta = eval(z[i]) / denom;
            z[i] -= delta;
            move = std::max(move, std::abs(delta));
        }
        if (move < 1e-14)
            break;
    }
    return z;
}

std::vector<cx> small_eigenvalues(const CMatrix& a) {
    return polynomial_roots(characteristic_polynomial(a));
}

// --- transport ---------------------------------------------------------------

TransportResult min_cost_transport(const TransportProblem& p) {
    const std::size_t m = p.sources.size(), n = p.sinks.size();
    if (m == 0 || n == 0)
        fail(errc::invalid_argument, "min_cost_transport: empty side");
    if (m > 64 || n > 64)
        fail(errc::invalid_argument, "min_cost_transport: more than 64 sources or sinks");
    if (p.source_mass.size() != m || p.sink_mass.size() != n)
        fail(errc::invalid_argument, "min_cost_transport: mass vector size mismatch");
    double total_a = 0.0, total_b = 0.0;
    for (double v : p.source_mass) {
        if (!(v > 0.0))
            fail(errc::invalid_argument, "min_cost_transport: nonpositive source mass");
        total_a += v;
    }
    for (double v : p.sink_mass) {
        if (!(v > 0.0))
            fail(errc::invalid_argument, "min_cost_transport: nonpositive sink mass");
        total_b += v;
    }
    if (std::fabs(total_a - total_b) > 1e-10 * std::max(1.0, std::max(total_a, total_b)))
        fail(errc::invalid_argument, "min_cost_transport: unbalanced problem");

    std::vector<std::vector<double>> cost(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i][j] = torus_distance(p.sources[i], p.sinks[j]);

    std::vector<double> supply = p.source_mass;
    std::vector<double> demand = p.sink_mass;
    // Scale demand so the totals match exactly; keeps the loop termination clean.
    const double fix = total_a / total_b;
    for (double& v : demand)
        v *= fix;

    std::vector<std::vector<double>> flow(m, std::vector<double>(n, 0.0));
    std::vector<double> u(m, 0.0), v(n, 0.0); // potentials, reduced cost c - (v_j - u_i) >= 0

    // Bellman-Ford style initialization of sink potentials on the empty flow.
    for (std::size_t j = 0; j < n; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i)
            best = std::min(best, cost[i][j]);
        v[j] = best;
    }

    const double eps_mass = 1e-15 * std::max(1.0, total_a);
    double remaining = total_a;
    const int cap = 64 * static_cast<int>((m + n) * (m + n)) + 256;
    int guard = 0;
    while (remaining > eps_mass) {
        if (++guard > cap)
            fail(errc::numerical, "min_cost_transport: augmentation cap exceeded");

        // Dijkstra over the residual bipartite graph with reduced costs.
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> du(m, inf), dv(n, inf);
        std::vector<char> visu(m, 0), visv(n, 0);
        std::vector<int> prevu(m, -1); // sink that reached this source (backward arc)
        std::vector<int> prevv(n, -1); // source that reached this sink (forward arc)
        for (std::size_t i = 0; i < m; ++i)
            if (supply[i] > eps_mass)
                du[i] = 0.0;

        int reached_sink = -1;
        while (true) {
            // Pick the unvisited node (either side) with the smallest label.
            double best = inf;
            int side = -1;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (!visu[i] && du[i] < best) {
                    best = du[i];
                    side = 0;
                    idx = i;
                }
            for (std::size_t j = 0; j < n; ++j)
                if (!visv[j] && dv[j] < best) {
                    best = dv[j];
                    side = 1;
                    idx = j;
                }
            if (side < 0)
                break;
            if (side == 0) {
                visu[idx] = 1;
                for (std::size_t j = 0; j < n; ++j) {
                    if (visv[j])
                        continue;
                    const double rc = cost[idx][j] + u[idx] - v[j];
                    const double nd = du[idx] + std::max(0.0, rc);
                    if (nd < dv[j] - 1e-18) {
                        dv[j] = nd;
                        prevv[j] = static_cast<int>(idx);
                    }
                }
            } else {
                visv[idx] = 1;
                if (demand[idx] > eps_mass) {
                    // First settled sink with deficit ends the search.
                    reached_sink = static_cast<int>(idx);
                    break;
                }
                for (std::size_t i = 0; i < m; ++i) {
                    if (visu[i] || flow[i][idx] <= eps_mass)
                        continue;
                    const double rc = -(cost[i][idx] + u[i] - v[idx]);
                    const double nd = dv[idx] + std::max(0.0, rc);
                    if (nd < du[i] - 1e-18) {
                        du[i] = nd;
                        prevu[i] = static_cast<int>(idx);
                    }
                }
            }
        }
        if (reached_sink < 0)
            fail(errc::numerical, "min_cost_transport: no augmenting path");

        // Potential update keeps every residual reduced cost nonnegative.
        const double dstar = dv[reached_sink];
        for (std::size_t i = 0; i < m; ++i)
            u[i] += std::min(du[i], dstar);
        for (std::size_t j = 0; j < n; ++j)
            v[j] += std::min(dv[j], dstar);

        // Trace the path sink <- source <- sink ... and find the bottleneck.
        double push = demand[reached_sink];
        {
            int j = reached_sink;
            while (true) {
                const int i = prevv[j];
                push = std::min(push, (prevu[i] < 0) ? supply[i] : flow[i][prevu[i]]);
                if (prevu[i] < 0)
                    break;
                j = prevu[i];
            }
        }
        if (!(push > 0.0))
            fail(errc::numerical, "min_cost_transport: degenerate augmentation");
        {
            int j = reached_sink;
            while (true) {
                const int i = prevv[j];
                flow[i][j] += push;
                if (prevu[i] < 0) {
                    supply[i] -= push;
                    break;
                }
                flow[i][prevu[i]] -= push;
                j = prevu[i];
            }
            demand[reached_sink] -= push;
        }
        remaining -= push;
    }

    TransportResult r;
    r.source_potential.assign(m, 0.0);
    r.sink_potential.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        r.source_potential[i] = -u[i];
    for (std::size_t j = 0; j < n; ++j)
        r.sink_potential[j] = v[j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (flow[i][j] > eps_mass) {
                r.plan.push_back({i, j, flow[i][j]});
                r.cost += flow[i][j] * cost[i][j];
            }
    return r;
}

} // namespace pronylab
