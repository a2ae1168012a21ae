#ifndef SPINRING_KERNELS_HPP
#define SPINRING_KERNELS_HPP

#include "spinring/grid.hpp"

// Hot loops shared by the operator, dynamic-programming, and shortest-path
// code.  The spinring::kernels versions are OpenMP-parallel; an identical
// serial implementation lives in spinring::kernels::serial and is used as
// the reference in tests and the benchmark.  Every parallel loop assigns
// each output element to exactly one thread and accumulates in a fixed
// serial order within the element, so results are bit-identical to the
// serial versions regardless of thread count.

namespace spinring::kernels {

// out[r][c] = exp(beta * a[c][r]) * weight  (note the transpose: `a` is the
// potential table indexed [first arg][second arg], `out` is the forward
// operator matrix indexed [output node][input node]).
void exp_table(const DenseMatrix& a, double beta, double weight, DenseMatrix& out);

// y = M x
void matvec(const DenseMatrix& m, const double* x, double* y);

// y = M^T x
void matvec_transpose(const DenseMatrix& m, const double* x, double* y);

// In-place (max,+) path closure: b[i][j] becomes the maximum total weight of
// a path i -> j of length >= 1 (Floyd–Warshall recursion on the max-plus
// semiring).
void maxplus_closure(DenseMatrix& b);

// One Jacobi relaxation sweep of min-plus Bellman updates:
// out[v] = min(dist[v], min_u dist[u] + cost[u][v]).
// Returns the maximum decrease over nodes.
double bellman_step(const DenseMatrix& cost, const double* dist, double* out);

// One round of the dynamic program for walk values:
// out[v] = max_u prev[u] + weight[u][v]; arg[v] records the maximizing u
// (smallest index on ties).
void walk_step(const DenseMatrix& weight, const double* prev, double* out, int* arg);

}  // namespace spinring::kernels

namespace spinring::kernels::serial {

void exp_table(const DenseMatrix& a, double beta, double weight, DenseMatrix& out);
void matvec(const DenseMatrix& m, const double* x, double* y);
void matvec_transpose(const DenseMatrix& m, const double* x, double* y);
void maxplus_closure(DenseMatrix& b);
double bellman_step(const DenseMatrix& cost, const double* dist, double* out);
void walk_step(const DenseMatrix& weight, const double* prev, double* out, int* arg);

}  // namespace spinring::kernels::serial

#endif  // SPINRING_KERNELS_HPP
