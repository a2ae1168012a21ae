#include "spinring/potential.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spinring {

namespace {

// Half-width eps^{3^j} / 2 of ring j's outer circle, computed in the log
// domain so deep rings underflow gracefully to zero instead of trapping.
double ring_half_width(int j, double log_eps) {
  double e = std::pow(3.0, j) * log_eps - std::log(2.0);
  return std::exp(e);  // exp underflows to +0 for e < ~-745
}

}  // namespace

double step_u_value(double t, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("step_u_value: epsilon must lie in (0, 1/2)");
  }
  const double log_eps = std::log(epsilon);
  const double d0 = circle_distance(t, 0.0);
  const double dpi = circle_distance(t, kPi);

  // The exact centers carry the limit value 1/2.
  if (d0 == 0.0 || dpi == 0.0) return 0.5;

  // Even rings (j = 2, 4, ...) surround 0; odd rings (j = 1, 3, ...) surround
  // pi.  Membership in ring j means d in [hw(j+2), hw(j)), i.e. d < hw(j) but
  // d >= hw(j+2); we find the innermost j of the right parity with d < hw(j).
  struct Branch {
    double d;
    int j0;
  };
  for (Branch b : {Branch{d0, 2}, Branch{dpi, 1}}) {
    if (b.d < ring_half_width(b.j0, log_eps)) {
      int j = b.j0;
      while (b.d < ring_half_width(j + 2, log_eps)) j += 2;
      return 0.5 - std::exp2(-(j + 1));
    }
  }
  return 0.0;  // background
}

double CircleFunction::operator()(double t) const {
  if (name == "zero") return 0.0;
  if (name == "cos") return std::cos(t);
  if (name == "cos2t") return std::cos(2.0 * t);
  if (name == "fourier") {
    double acc = 0.0;
    for (size_t k = 0; k < cos_coeffs.size(); ++k)
      acc += cos_coeffs[k] * std::cos((static_cast<double>(k) + 1.0) * t);
    for (size_t k = 0; k < sin_coeffs.size(); ++k)
      acc += sin_coeffs[k] * std::sin((static_cast<double>(k) + 1.0) * t);
    return acc;
  }
  throw std::invalid_argument("CircleFunction: unknown name '" + name + "'");
}

TwoSitePotential TwoSitePotential::cosine_xy(double alpha, double gamma) {
  TwoSitePotential p;
  p.kind_ = PotentialKind::CosineXY;
  p.alpha_ = alpha;
  p.gamma_ = gamma;
  return p;
}

TwoSitePotential TwoSitePotential::symmetric_u(CircleFunction u) {
  TwoSitePotential p;
  p.kind_ = PotentialKind::SymmetricU;
  p.u_ = std::move(u);
  p.u_(0.0);  // validate the name eagerly
  return p;
}

TwoSitePotential TwoSitePotential::tabulated(DenseMatrix table) {
  if (table.rows != table.cols || table.rows < 2) {
    throw std::invalid_argument("tabulated potential: table must be square, n >= 2");
  }
  for (double v : table.data) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("tabulated potential: non-finite table entry");
    }
  }
  TwoSitePotential p;
  p.kind_ = PotentialKind::Tabulated;
  p.table_ = std::move(table);
  return p;
}

TwoSitePotential TwoSitePotential::tabulated_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("tabulated potential: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("tabulated potential: empty file " + path);
  }
  int n = 0;
  try {
    n = std::stoi(line);
  } catch (const std::exception&) {
    throw std::runtime_error("tabulated potential: header row must hold n");
  }
  if (n < 2) throw std::runtime_error("tabulated potential: n must be >= 2");
  DenseMatrix table(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("tabulated potential: missing row in " + path);
    }
    std::stringstream row(line);
    std::string cell;
    for (int j = 0; j < n; ++j) {
      if (!std::getline(row, cell, ',')) {
        throw std::runtime_error("tabulated potential: short row in " + path);
      }
      table.at(i, j) = std::stod(cell);
    }
  }
  return tabulated(std::move(table));
}

TwoSitePotential TwoSitePotential::step_vanenter(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("step_vanenter: epsilon must lie in (0, 1/2)");
  }
  TwoSitePotential p;
  p.kind_ = PotentialKind::StepVanEnter;
  p.epsilon_ = epsilon;
  return p;
}

TwoSitePotential TwoSitePotential::from_json(const nlohmann::json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "cosine_xy") {
    return cosine_xy(spec.value("alpha", 0.0), spec.value("gamma", 0.0));
  }
  if (kind == "symmetric_u") {
    CircleFunction u;
    u.name = spec.at("name").get<std::string>();
    if (spec.contains("cos_coeffs")) {
      u.cos_coeffs = spec.at("cos_coeffs").get<std::vector<double>>();
    }
    if (spec.contains("sin_coeffs")) {
      u.sin_coeffs = spec.at("sin_coeffs").get<std::vector<double>>();
    }
    return symmetric_u(std::move(u));
  }
  if (kind == "tabulated") {
    return tabulated_from_csv(spec.at("path").get<std::string>());
  }
  if (kind == "step_vanenter") {
    return step_vanenter(spec.at("epsilon").get<double>());
  }
  throw std::invalid_argument("potential registry: unknown kind '" + kind + "'");
}

double TwoSitePotential::evaluate(double x, double y) const {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::domain_error("TwoSitePotential::evaluate: non-finite input");
  }
  switch (kind_) {
    case PotentialKind::CosineXY:
      return std::cos(y - x - alpha_) + gamma_ * std::cos(2.0 * x);
    case PotentialKind::SymmetricU:
      return u_(x - y);
    case PotentialKind::StepVanEnter:
      return step_u_value(y - x, epsilon_);
    case PotentialKind::Tabulated: {
      const int n = table_.rows;
      const double h = kTwoPi / n;
      const double fx = wrap_angle(x) / h;
      const double fy = wrap_angle(y) / h;
      const int i0 = static_cast<int>(fx) % n;
      const int j0 = static_cast<int>(fy) % n;
      const int i1 = (i0 + 1) % n;
      const int j1 = (j0 + 1) % n;
      const double tx = fx - std::floor(fx);
      const double ty = fy - std::floor(fy);
      return (1.0 - tx) * (1.0 - ty) * table_.at(i0, j0) +
             tx * (1.0 - ty) * table_.at(i1, j0) +
             (1.0 - tx) * ty * table_.at(i0, j1) +
             tx * ty * table_.at(i1, j1);
    }
  }
  throw std::logic_error("TwoSitePotential::evaluate: unreachable");
}

DenseMatrix TwoSitePotential::tabulate(const CircleGrid& grid) const {
  const int n = grid.size();
  if (kind_ == PotentialKind::Tabulated && table_.rows == n) {
    return table_;  // exact on a matching grid
  }
  DenseMatrix t(n, n);
  for (int i = 0; i < n; ++i) {
    const double xi = grid.node(i);
    for (int j = 0; j < n; ++j) {
      t.at(i, j) = evaluate(xi, grid.node(j));
    }
  }
  return t;
}

bool TwoSitePotential::is_analytic() const {
  return kind_ == PotentialKind::CosineXY || kind_ == PotentialKind::SymmetricU;
}

bool TwoSitePotential::is_translation_invariant() const {
  return kind_ == PotentialKind::SymmetricU ||
         kind_ == PotentialKind::StepVanEnter ||
         (kind_ == PotentialKind::CosineXY && gamma_ == 0.0);
}

std::string TwoSitePotential::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case PotentialKind::CosineXY:
      os << "cosine_xy(alpha=" << alpha_ << ",gamma=" << gamma_ << ")";
      break;
    case PotentialKind::SymmetricU:
      os << "symmetric_u(" << u_.name << ")";
      break;
    case PotentialKind::Tabulated:
      os << "tabulated(n=" << table_.rows << ")";
      break;
    case PotentialKind::StepVanEnter:
      os << "step_vanenter(epsilon=" << epsilon_ << ")";
      break;
  }
  return os.str();
}

double TwoSitePotential::max_abs_on_grid(const CircleGrid& grid) const {
  // The step profile is bounded by 1/2 everywhere, including off-grid rings.
  if (kind_ == PotentialKind::StepVanEnter) return 0.5;
  double m = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    for (int j = 0; j < grid.size(); ++j) {
      m = std::max(m, std::fabs(evaluate(grid.node(i), grid.node(j))));
    }
  }
  return m;
}

HolderEstimate holder_estimate(const TwoSitePotential& potential,
                               const CircleGrid& grid, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("holder_estimate: alpha must lie in (0, 1]");
  }
  HolderEstimate est;
  est.exponent = alpha;
  if (!potential.is_continuous()) {
    // Jump discontinuity: the quotient diverges as pairs straddle an edge.
    est.constant = std::numeric_limits<double>::infinity();
    est.holder = false;
    return est;
  }
  const int n = grid.size();
  const DenseMatrix t = potential.tabulate(grid);
  // |A(p)-A(q)| / d(p,q)^alpha over all distinct grid pairs, with d the l^1
  // product circle metric.  Circle distances between nodes are multiples of
  // the spacing, so the powers are precomputed once; the quartic loop then
  // runs on cheap table lookups.
  std::vector<int> steps(static_cast<size_t>(n));   // circular index distance
  for (int i = 0; i < n; ++i) steps[static_cast<size_t>(i)] = std::min(i, n - i);
  std::vector<double> inv_pow(static_cast<size_t>(n) + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    inv_pow[static_cast<size_t>(m)] = 1.0 / std::pow(grid.spacing() * m, alpha);
  }
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double aij = t.at(i, j);
      for (int k = 0; k < n; ++k) {
        const int di = steps[static_cast<size_t>((k - i + n) % n)];
        const double* row = t.row(k);
        for (int l = 0; l < n; ++l) {
          const int m = di + steps[static_cast<size_t>((l - j + n) % n)];
          if (m == 0) continue;
          const double q = std::fabs(aij - row[l]) * inv_pow[static_cast<size_t>(m)];
          if (q > best) best = q;
        }
      }
    }
  }
  est.constant = best;
  est.holder = std::isfinite(best);
  return est;
}

}  // namespace spinring
