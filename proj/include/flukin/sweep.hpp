#ifndef FLUKIN_SWEEP_HPP
#define FLUKIN_SWEEP_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flukin/model.hpp"
#include "flukin/spectrum.hpp"
#include "flukin/surface.hpp"

namespace flukin {

/// `steps` evenly spaced points from `from` to `to` inclusive.
std::vector<double> linspace(double from, double to, int steps);

struct SweepRow {
    double T = 0.0;
    Regime kind = Regime::definite;
    double max_real_eig = 0.0;  // spectral abscissa with the structural zero removed
    int n_positive = 0;         // positive real eigenvalues
};

/// One spectrum per T value. Rows come back in input order for either
/// execution mode, and the two modes agree bit for bit.
std::vector<SweepRow> sweep_threshold(const ModelParams& params, std::span<const double> Ts,
                                      Execution exec = Execution::parallel);

/// Header `T,classification,max_real_eig,n_positive`.
std::string sweep_csv_header();
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// One panel of the vector-field sketch: the time field sampled on a square
/// lattice in the plane through the origin spanned by two eigen-directions.
struct FieldPanel {
    std::string name;    // below, at or above
    double T = 0.0;
    std::string axis_u;  // always V-
    std::string axis_w;  // V0, V0' or V+
    Eigen::VectorXd u;   // (I.., V, W) direction
    Eigen::VectorXd w;
    std::vector<double> coords;  // lattice coordinates on each axis
    /// samples[a * n + b] at a·u + b·w; full time and x field vectors.
    std::vector<Eigen::VectorXd> d_dt;
    std::vector<Eigen::VectorXd> d_dx;
};

struct SketchOptions {
    double below = 0.5;   // T / T* for the left panel
    double above = 1.5;   // T / T* for the right panel
    double extent = 1.0;  // lattice covers [−extent, extent] on both axes
    int points = 5;       // lattice points per axis
};

/// Three panels at T below, at and above T* (n_E = 0). The V⁻ axis is the
/// eigenvector of the negative eigenvalue closest to zero, or the real part
/// of a stable complex pair when no negative real eigenvalue exists.
std::vector<FieldPanel> field_sketch(const ModelParams& params, const FieldCoefficients& coeffs,
                                     const SketchOptions& opts = {},
                                     Execution exec = Execution::parallel);

std::string field_csv_header(int n_E, int n_I);
void write_csv(std::ostream& os, const std::vector<FieldPanel>& panels, int n_E, int n_I);

}  // namespace flukin

#endif  // FLUKIN_SWEEP_HPP
