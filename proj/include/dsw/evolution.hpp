#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "dsw/spectral.hpp"
#include "dsw/wave_family.hpp"

namespace dsw {

/// Half-spectrum (r2c, unnormalized) coefficients of a real field.
using SpectralField = std::vector<cplx>;

/// State of u_t + (uv)_x + u_xxx = 0, v_t + u u_x = 0 in a frame moving with
/// speed frame_speed (+ v_shift for the mean removed by preprocessing).
struct SimState {
  double t = 0.0;
  SpectralField u_hat;
  SpectralField v_hat;
  double frame_speed = 0.0;
  double v_shift = 0.0;  // g0 from preprocess; 0 when v keeps its mean
  double L = 0.0;
  std::size_t N = 0;
};

struct PreprocessRecord {
  double g0;
  std::string shift_rule;
};

struct Preprocessed {
  GridFunction u0;
  GridFunction v0;
  PreprocessRecord rec;
};

/// Removes the mean g0 of v0. The shifted system is solved in coordinates
/// x' = x - g0 t; postprocess() maps back.
Preprocessed preprocess(const GridFunction& u0, const GridFunction& v0);

struct LabFields {
  GridFunction u;
  GridFunction v;
};

/// Physical-space fields of a state, translated back to the lab frame
/// (undoing both frame_speed and the preprocessing shift).
LabFields postprocess(const SimState& s);

/// Fields on the grid of the state's own frame (no translation).
LabFields frame_fields(const SimState& s);

SimState make_state(const GridFunction& u0, const GridFunction& v0, double frame_speed,
                    double v_shift = 0.0);

enum class Scheme { ETDRK4, IFRK4 };

struct StepOptions {
  bool dealias = true;
  Scheme scheme = Scheme::ETDRK4;
};

/// Fourth-order exponential stepper (ETDRK4 by default, Lawson IFRK4 on
/// request). The linear part is integrated exactly; products are dealiased
/// on a 3/2-padded grid. Holds FFT plans and cached coefficients.
class Stepper {
 public:
  Stepper(std::size_t N, double L, StepOptions opts = {});
  ~Stepper();
  Stepper(Stepper&&) noexcept;
  Stepper& operator=(Stepper&&) noexcept;

  /// One step; throws BlowUpError (carrying the last finite time) when a
  /// coefficient becomes non-finite or exceeds 1e12.
  SimState step(const SimState& s, double dt);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SimState step(const SimState& s, double dt, StepOptions opts = {});

struct ConservationRecord {
  double t;
  ConservedQuantities q;
};

struct SimulateOptions {
  StepOptions step;
  double sample_interval = 0.0;  // 0: only the initial and final states
  bool keep_states = true;
};

struct Trajectory {
  std::vector<SimState> states;
  std::vector<ConservationRecord> log;
  /// max_t |Q(t) - Q(0)| / max(|Q(0)|, int(u0^2 + v0^2)) per quantity:
  /// m_u, m_v, e_mixed, l2.
  std::array<double, 4> max_rel_drift{};
  double max_drift() const;
};

/// Conserved quantities of a state, computed on a 2x padded grid so the cubic
/// term is integrated exactly for band-limited fields.
ConservedQuantities state_invariants(const SimState& s);

/// Evolves (u0, v0) for time T with step dt. On blow-up a BlowUpError is
/// thrown; `partial` (when non-null) receives the trajectory so far.
Trajectory simulate(const GridFunction& u0, const GridFunction& v0, double T, double dt,
                    double frame_speed, const SimulateOptions& opts = {},
                    Trajectory* partial = nullptr);

/// Same, starting from an already-built state (e.g. after preprocess).
Trajectory simulate_state(SimState s, double T, double dt, const SimulateOptions& opts = {},
                          Trajectory* partial = nullptr);

struct GrowthFit {
  double lambda_fit;
  double lambda_lin;
  double rel_err;
  double initial_deviation;  // ||(u - psi, v - phi)|| at t = 0
  std::vector<double> times;
  std::vector<double> deviations;
};

struct GrowthOptions {
  std::size_t N = 256;
  double dt = 1e-3;
  double linear_limit = 1e-2;  // deviation ceiling of the linear regime
};

/// Least-squares slope of log(deviation) against time.
double fit_log_slope(const std::vector<double>& t, const std::vector<double>& y);

/// Seeds (psi, phi) + eps (U, V) with (U, V) the most unstable eigenfunction
/// of the collocated d_xi H, evolves in the co-moving frame, and fits the
/// exponential rate. Throws NoUnstableModeError when no eigenvalue has
/// positive real part beyond the eigensolver tolerance.
GrowthFit growth_rate_experiment(const WaveParams& p, double eps, double T,
                                 const GrowthOptions& opts = {});

/// The fitting pipeline with a caller-supplied seed (U, V) and reference rate.
GrowthFit growth_rate_with_seed(const WaveParams& p, const std::vector<double>& U,
                                const std::vector<double>& V, double lambda_ref, double eps,
                                double T, const GrowthOptions& opts = {});

}  // namespace dsw
