#include "tetlab/phasespace.hpp"

#include <cmath>
#include <limits>

#include "tetlab/errors.hpp"
#include "tetlab/numeric.hpp"
#include "tetlab/parallel.hpp"

namespace tetlab {

namespace {

constexpr double kJacobianFloor = 1e-14;

void require_jacobian(double d, const char* where) {
  if (!(d > kJacobianFloor)) throw CausticSingularity(std::string(where) + ": Jacobian vanishes");
}

// Time-resolved densities assume each trajectory passes q at most once.
void require_monotone(const PhaseSpaceFamily& fam, double q0, double p0, const char* where) {
  constexpr int kProbes = 16;
  const double lo = fam.t_bracket.lo, hi = fam.t_bracket.hi;
  bool up = false, down = false;
  for (int i = 0; i <= kProbes; ++i) {
    const double v = fam.dq_dt(q0, p0, lo + (hi - lo) * i / kProbes);
    up = up || v > 0.0;
    down = down || v < 0.0;
  }
  if (up && down) {
    throw UnsupportedInversion(std::string(where) + ": trajectory is not monotone over the bracket");
  }
}

}  // namespace

PhasePreparation gaussian_phase_preparation(const GaussianPrep1D& prep) {
  prep.validate();
  const double mq = prep.mean_q, sq = prep.sigma0, mp = prep.mean_p, sp = prep.sigma_p();
  return PhasePreparation{
      [=](double q0, double p0) { return eval_gaussian(q0, mq, sq) * eval_gaussian(p0, mp, sp); },
      mq, sq, mp, sp};
}

JacobianFactors jacobian_factors(const PhaseSpaceFamily& fam, double q, double p0, double t) {
  const double q0 = fam.q0_from_q(q, p0, t);
  const double qq0 = fam.dq_dq0(q0, p0, t);
  const double qp0 = fam.dq_dp0(q0, p0, t);
  const double qt = fam.dq_dt(q0, p0, t);
  const double pq0 = fam.dp_dq0(q0, p0, t);
  const double pp0 = fam.dp_dp0(q0, p0, t);
  const double pt = fam.dp_dt(q0, p0, t);
  // Q0q(q, p0, t) moves with p0 at rate -∂p0Q / ∂q0Q.
  const double dq0_dp0 = -qp0 / qq0;

  JacobianFactors j;
  j.dq_q0 = std::abs(qq0);
  j.dp_p0 = std::abs(pq0 * dq0_dp0 + pp0);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  j.dt_q0 = fam.t_from_q ? std::abs(qq0 / qt) : nan;
  if (fam.t_from_p) {
    const double tq0 = -pq0 / pt;
    const double tp0 = -pp0 / pt;
    j.dt_p0 = std::abs(tq0 * dq0_dp0 + tp0);
  } else {
    j.dt_p0 = nan;
  }
  return j;
}

std::vector<double> momentum_roots_position(const PhaseSpaceFamily& fam, const PhasePreparation& prep,
                                            double q, double p, double t,
                                            const PhaseSpaceOptions& opt) {
  const double lo = prep.mean_p - opt.bracket_sigmas * prep.sigma_p;
  const double hi = prep.mean_p + opt.bracket_sigmas * prep.sigma_p;
  return find_roots(
      [&](double p0) { return fam.p_of(fam.q0_from_q(q, p0, t), p0, t) - p; }, lo, hi,
      opt.root_scan_steps);
}

std::vector<double> momentum_roots_time(const PhaseSpaceFamily& fam, const PhasePreparation& prep,
                                        double q, double p, double t,
                                        const PhaseSpaceOptions& opt) {
  if (!fam.t_from_p) throw UnsupportedInversion("family has no time-from-momentum map");
  const double lo = prep.mean_p - opt.bracket_sigmas * prep.sigma_p;
  const double hi = prep.mean_p + opt.bracket_sigmas * prep.sigma_p;
  return find_roots(
      [&](double p0) {
        const auto tp = fam.t_from_p(p, fam.q0_from_q(q, p0, t), p0);
        return tp ? *tp - t : std::numeric_limits<double>::quiet_NaN();
      },
      lo, hi, opt.root_scan_steps);
}

double joint_qp_pdf(const PhaseSpaceFamily& fam, const PhasePreparation& prep, double q, double p,
                    double t, const PhaseSpaceOptions& opt) {
  double sum = 0.0;
  for (double p0 : momentum_roots_position(fam, prep, q, p, t, opt)) {
    const JacobianFactors j = jacobian_factors(fam, q, p0, t);
    require_jacobian(j.dq_q0, "joint_qp_pdf");
    require_jacobian(j.dp_p0, "joint_qp_pdf");
    sum += prep.rho0(fam.q0_from_q(q, p0, t), p0) / (j.dq_q0 * j.dp_p0);
  }
  return sum;
}

double joint_pt_pdf(const PhaseSpaceFamily& fam, const PhasePreparation& prep, double q, double p,
                    double t, const PhaseSpaceOptions& opt) {
  if (!fam.t_from_q) throw UnsupportedInversion("family has no time-from-position map");
  double sum = 0.0;
  for (double p0 : momentum_roots_position(fam, prep, q, p, t, opt)) {
    require_monotone(fam, fam.q0_from_q(q, p0, t), p0, "joint_pt_pdf");
    const JacobianFactors j = jacobian_factors(fam, q, p0, t);
    require_jacobian(j.dt_q0, "joint_pt_pdf");
    require_jacobian(j.dp_p0, "joint_pt_pdf");
    sum += prep.rho0(fam.q0_from_q(q, p0, t), p0) / (j.dt_q0 * j.dp_p0);
  }
  return sum;
}

double joint_qt_pdf(const PhaseSpaceFamily& fam, const PhasePreparation& prep, double q, double p,
                    double t, const PhaseSpaceOptions& opt) {
  if (!fam.t_from_p) throw UnsupportedInversion("family has no time-from-momentum map");
  double sum = 0.0;
  for (double p0 : momentum_roots_time(fam, prep, q, p, t, opt)) {
    require_monotone(fam, fam.q0_from_q(q, p0, t), p0, "joint_qt_pdf");
    const JacobianFactors j = jacobian_factors(fam, q, p0, t);
    require_jacobian(j.dq_q0, "joint_qt_pdf");
    require_jacobian(j.dt_p0, "joint_qt_pdf");
    sum += prep.rho0(fam.q0_from_q(q, p0, t), p0) / (j.dq_q0 * j.dt_p0);
  }
  return sum;
}

double marginalize_p(const std::function<double(double)>& f, const Grid1D& p_grid) {
  return trapezoid(f, p_grid);
}

Grid1D default_momentum_grid(const PhasePreparation& prep) {
  return Grid1D(prep.mean_p - 10.0 * prep.sigma_p, prep.mean_p + 10.0 * prep.sigma_p, 2001);
}

SampledDistribution tabulate_phase_flighttime(const PhaseSpaceFamily& fam,
                                              const PhasePreparation& prep, double q,
                                              const Grid1D& time_grid, const Grid1D& p_grid,
                                              std::string label) {
  if (!fam.t_from_q) throw UnsupportedInversion("family has no time-from-position map");
  std::vector<double> values(time_grid.size());
  parallel_for(time_grid.size(), [&](std::size_t i) {
    const double t = time_grid[i];
    values[i] = marginalize_p([&](double p) { return joint_pt_pdf(fam, prep, q, p, t); }, p_grid);
  });
  return normalize(SampledDistribution(time_grid, std::move(values), std::move(label)));
}

SampledDistribution tabulate_phase_position(const PhaseSpaceFamily& fam,
                                            const PhasePreparation& prep, const Grid1D& q_grid,
                                            double t, const Grid1D& p_grid, std::string label) {
  std::vector<double> values(q_grid.size());
  parallel_for(q_grid.size(), [&](std::size_t i) {
    const double q = q_grid[i];
    values[i] = marginalize_p([&](double p) { return joint_qp_pdf(fam, prep, q, p, t); }, p_grid);
  });
  return SampledDistribution(q_grid, std::move(values), std::move(label));
}

}  // namespace tetlab
