#ifndef FLUKIN_CONFIG_HPP
#define FLUKIN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "flukin/model.hpp"
#include "flukin/surface.hpp"
#include "flukin/sweep.hpp"

namespace flukin {

struct SweepSpec {
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
};

struct GridSpec {
    Span x_span{0.0, 0.0};
    Span t_span{0.0, 1.0};
    double h_x = 0.1;
    double h_t = 0.01;
};

struct Tolerances {
    double charpoly = 1e-9;     // relative agreement of the polynomial forms
    double eigenvector = 1e-8;  // ‖Av − λv‖∞ / ‖v‖∞
    double zero = 1e-8;         // zero detection, relative to ‖A‖∞
    double root = 1e-13;        // bisection width, relative to c + c_I + βTp
};

/// One JSON document drives every subcommand. Only the keys a subcommand
/// needs have to be present.
struct RunConfig {
    std::optional<ModelParams> params;
    std::optional<FieldCoefficients> coeffs;
    std::optional<double> T;
    std::optional<SweepSpec> sweep;
    std::optional<StateVector> initial_state;
    std::optional<GridSpec> grid;
    Tolerances tolerances;
    std::uint64_t seed = 0;
    bool linearized = false;        // simulate: frozen-T linear field
    std::optional<double> window;   // asymptotics window; default half the run
    SketchOptions sketch;

    const ModelParams& require_params() const;
    FieldCoefficients coefficients() const;
    double require_T() const;
    const SweepSpec& require_sweep() const;
    const StateVector& require_initial_state() const;
    const GridSpec& require_grid() const;
};

/// Throws ValidationError listing every problem found.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace flukin

#endif  // FLUKIN_CONFIG_HPP
