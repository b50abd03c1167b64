// Pseudospectral Strang-split integrator on the periodic grid, blow-up
// detection, and the comoving normal-form transform of the cubic system.
#pragma once

#include "rda/core.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rda {

using Spectrum = Eigen::ArrayXcd;  // half spectrum, length n/2 + 1
using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Raised by the stepper when a field leaves the finite range.
class BlowUp : public std::runtime_error {
 public:
  explicit BlowUp(double time);
  double time() const { return time_; }

 private:
  double time_;
};

struct SpectralWorkspace {
  int n = 0;
  double dt = 0.0;
  Eigen::ArrayXd k;            // k_m = pi m / L, m = 0..n/2
  Mask dealias_mask;           // true for retained modes, m < n/3
  Spectrum full_u, full_v;     // e^{(-d k^2 + i c k) dt}
  Spectrum half_u, half_v;     // same over dt/2, used by the Strang step

  static SpectralWorkspace build(const SystemSpec& spec, const Grid& grid, double dt);
};

struct FftPlans;

/// FFT helpers bound to one grid. Plans are shared per size and immutable,
/// so instances are cheap to copy; each instance owns its scratch buffer.
class SpectralOps {
 public:
  explicit SpectralOps(const Grid& grid);

  int size() const { return n_; }
  const Eigen::ArrayXd& wavenumbers() const { return k_; }
  Spectrum forward(const Eigen::ArrayXd& f);
  Eigen::ArrayXd inverse(const Spectrum& f);
  void forward(const Eigen::ArrayXd& f, Spectrum& out);
  void inverse(const Spectrum& f, Eigen::ArrayXd& out);

  Eigen::ArrayXd derivative(const Eigen::ArrayXd& f, int order = 1);
  /// g(x) = f(x + a) by exact Fourier interpolation.
  Eigen::ArrayXd translate(const Eigen::ArrayXd& f, double a);
  /// sup_k |f^(k)| and int |f^(k)| dk of the continuous transform f^(k) = int e^{-ikx} f dx.
  std::pair<double, double> transform_norms(const Eigen::ArrayXd& f);
  /// Sobolev H^2 norm computed from the spectrum.
  double h2_norm(const Eigen::ArrayXd& f);

 private:
  int n_;
  double L_;
  Eigen::ArrayXd k_;
  const FftPlans* plans_;  // owned by a process-wide cache
  Spectrum scratch_;
};

/// Strang stepper: half linear multiplier, RK4 on the dealiased nonlinearity,
/// half linear multiplier. Works on half spectra.
class Stepper {
 public:
  Stepper(const SystemSpec& spec, const Grid& grid, double dt);
  Stepper(const SystemSpec& spec, const Grid& grid, SpectralWorkspace ws);

  const SpectralWorkspace& workspace() const { return ws_; }
  SpectralOps& ops() { return ops_; }

  void to_spectral(const State& s, Spectrum& uh, Spectrum& vh);
  State to_physical(double t, const Spectrum& uh, const Spectrum& vh);
  void project(Spectrum& f) const;

  void step(Spectrum& uh, Spectrum& vh);
  State step(const State& s);

  /// Cheap bound on max(|u|,|v|) from the spectra (triangle inequality).
  double sup_bound(const Spectrum& uh, const Spectrum& vh) const;

 private:
  void rhs(const Spectrum& uh, const Spectrum& vh, Spectrum& nu, Spectrum& nv);
  void evaluate(const std::vector<PolyTerm>& f, const std::vector<PolyTerm>& g, Spectrum& out);

  SystemSpec spec_;
  SpectralWorkspace ws_;
  SpectralOps ops_;
  int max_alpha_ = 0;
  int max_beta_ = 0;
  std::vector<Eigen::ArrayXd> upow_, vpow_;
  Eigen::ArrayXd u_, v_, work_;
  Spectrum fh_, gh_;
  Spectrum k1u_, k1v_, k2u_, k2v_, k3u_, k3v_, k4u_, k4v_, tu_, tv_;
};

/// Free-function form of one step; builds a stepper from the workspace.
State step(const State& state, const SystemSpec& spec, const Grid& grid, const SpectralWorkspace& ws);

bool detect_blow_up(const State& state, double threshold);

Eigen::ArrayXd evaluate_profile(const Profile& p, const Grid& grid, bool is_u);
State initial_state(const Scenario& scenario);

struct Sample {
  double t = 0.0;
  double linf_u = 0.0;
  double linf_v = 0.0;
  double l1_u = 0.0;
  double l1_v = 0.0;
};

struct TrajectoryReport {
  std::vector<Sample> samples;
  bool blew_up = false;
  std::optional<double> blow_up_time;
  std::optional<Sample> blow_up_sample;  // norms of the state that crossed the threshold
  int steps = 0;
};

Sample measure(const State& s, const Grid& grid);

using Observer = std::function<void(const State&)>;

/// Integrates from t = 0 to t_end, sampling every round(sample_dt/dt) steps.
/// Blow-up truncates the run and is recorded in the report.
TrajectoryReport run(const Scenario& scenario, const Observer& observer = {});

struct NormalFormState {
  double t = 0.0;
  Eigen::ArrayXd w;        // u in the comoving frame zeta = x + c1 t
  Eigen::ArrayXd v_tilde;  // v + (gamma/c) u^2 in the same frame
  double c = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double A = 0.0;          // int w dzeta
  Eigen::ArrayXd sigma;    // leading Gaussian with unit discrete mass
  Eigen::ArrayXd R;        // w - sigma A
};

NormalFormState to_normal_form(const State& state, const SystemSpec& spec, const Grid& grid,
                               double alpha, double beta, double gamma);

struct NormalFormResidual {
  double w = 0.0;
  double v = 0.0;
};

/// Residual of the transformed system at `mid`, central difference in time
/// with spacing h between the three snapshots.
NormalFormResidual normal_form_residual(const NormalFormState& prev, const NormalFormState& mid,
                                        const NormalFormState& next, double h, const SystemSpec& spec,
                                        const Grid& grid, double alpha, double gamma);

}  // namespace rda
