#include "spinring/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

// Serial reference implementations.  These mirror the OpenMP versions
// statement for statement (same loop order, same accumulation order) so the
// parallel kernels can be checked against them bit for bit.

namespace spinring::kernels::serial {

void exp_table(const DenseMatrix& a, double beta, double weight, DenseMatrix& out) {
  const int n = a.rows;
  for (int r = 0; r < n; ++r) {
    double* orow = out.row(r);
    for (int c = 0; c < n; ++c) {
      orow[c] = std::exp(beta * a.at(c, r)) * weight;
    }
  }
}

void matvec(const DenseMatrix& m, const double* x, double* y) {
  for (int r = 0; r < m.rows; ++r) {
    const double* row = m.row(r);
    double acc = 0.0;
    for (int c = 0; c < m.cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

void matvec_transpose(const DenseMatrix& m, const double* x, double* y) {
  for (int c = 0; c < m.cols; ++c) {
    double acc = 0.0;
    for (int r = 0; r < m.rows; ++r) acc += m.at(r, c) * x[r];
    y[c] = acc;
  }
}

void maxplus_closure(DenseMatrix& b) {
  const int n = b.rows;
  std::vector<double> pivot_row(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::copy(b.row(k), b.row(k) + n, pivot_row.begin());
    for (int i = 0; i < n; ++i) {
      double* row = b.row(i);
      const double bik = row[k];
      for (int j = 0; j < n; ++j) {
        row[j] = std::max(row[j], bik + pivot_row[static_cast<size_t>(j)]);
      }
    }
  }
}

double bellman_step(const DenseMatrix& cost, const double* dist, double* out) {
  const int n = cost.rows;
  double drop = 0.0;
  for (int v = 0; v < n; ++v) {
    double best = dist[v];
    for (int u = 0; u < n; ++u) {
      best = std::min(best, dist[u] + cost.at(u, v));
    }
    out[v] = best;
    drop = std::max(drop, dist[v] - best);
  }
  return drop;
}

void walk_step(const DenseMatrix& weight, const double* prev, double* out, int* arg) {
  const int n = weight.rows;
  for (int v = 0; v < n; ++v) {
    double best = prev[0] + weight.at(0, v);
    int best_u = 0;
    for (int u = 1; u < n; ++u) {
      const double cand = prev[u] + weight.at(u, v);
      if (cand > best) {
        best = cand;
        best_u = u;
      }
    }
    out[v] = best;
    arg[v] = best_u;
  }
}

}  // namespace spinring::kernels::serial
