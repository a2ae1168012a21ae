// Timing harness for the parallel kernels against their serial reference.
// Reports wall-clock per call and cross-checks that both produce identical
// bits, since the parallel schedules are designed to preserve the serial
// accumulation order of every output element.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "spinring/kernels.hpp"
#include "spinring/rng.hpp"

namespace {

using namespace spinring;

double seconds_per_call(const std::function<void()>& fn, int reps) {
  fn();  // warm-up
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count() / reps;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

DenseMatrix random_matrix(int n, uint64_t seed) {
  SplitMix64 rng(seed);
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.at(i, j) = 2.0 * rng.next_double() - 1.0;
  }
  return m;
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-18s serial %10.4f ms   parallel %10.4f ms   speedup %5.2fx   %s\n",
              name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
              identical ? "bits-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 512;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
  std::printf("kernel benchmark, n = %d, reps = %d\n", n, reps);

  const DenseMatrix a = random_matrix(n, 42);
  std::vector<double> vec(static_cast<size_t>(n));
  SplitMix64 rng(7);
  for (auto& v : vec) v = rng.next_double();

  {
    DenseMatrix par(n, n), ser(n, n);
    const double tp = seconds_per_call([&] { kernels::exp_table(a, 1.5, 1.0 / n, par); }, reps);
    const double ts = seconds_per_call(
        [&] { kernels::serial::exp_table(a, 1.5, 1.0 / n, ser); }, reps);
    report("exp_table", ts, tp, same_bits(par.data, ser.data));
  }
  {
    const DenseMatrix table = [&] {
      DenseMatrix t(n, n);
      kernels::exp_table(a, 1.5, 1.0 / n, t);
      return t;
    }();
    std::vector<double> par(static_cast<size_t>(n)), ser(static_cast<size_t>(n));
    const double tp = seconds_per_call(
        [&] { kernels::matvec(table, vec.data(), par.data()); }, reps);
    const double ts = seconds_per_call(
        [&] { kernels::serial::matvec(table, vec.data(), ser.data()); }, reps);
    report("matvec", ts, tp, same_bits(par, ser));
  }
  {
    DenseMatrix par = a, ser = a;
    const double tp = seconds_per_call(
        [&] {
          par = a;
          kernels::maxplus_closure(par);
        },
        reps);
    const double ts = seconds_per_call(
        [&] {
          ser = a;
          kernels::serial::maxplus_closure(ser);
        },
        reps);
    report("maxplus_closure", ts, tp, same_bits(par.data, ser.data));
  }
  {
    std::vector<double> par(static_cast<size_t>(n)), ser(static_cast<size_t>(n));
    const double tp = seconds_per_call(
        [&] { kernels::bellman_step(a, vec.data(), par.data()); }, reps);
    const double ts = seconds_per_call(
        [&] { kernels::serial::bellman_step(a, vec.data(), ser.data()); }, reps);
    report("bellman_step", ts, tp, same_bits(par, ser));
  }
  {
    std::vector<double> par(static_cast<size_t>(n)), ser(static_cast<size_t>(n));
    std::vector<int> arg_par(static_cast<size_t>(n)), arg_ser(static_cast<size_t>(n));
    const double tp = seconds_per_call(
        [&] { kernels::walk_step(a, vec.data(), par.data(), arg_par.data()); }, reps);
    const double ts = seconds_per_call(
        [&] { kernels::serial::walk_step(a, vec.data(), ser.data(), arg_ser.data()); },
        reps);
    report("walk_step", ts, tp, same_bits(par, ser) && arg_par == arg_ser);
  }
  return 0;
}
