#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "pht/linalg.hpp"
#include "pht/models.hpp"

namespace pht {

enum class Phase { Unbroken, Broken, Exceptional };

const char* to_string(Phase phase);

inline constexpr double kPhaseTol = 1e-8;

struct PhaseClassification {
    Phase label = Phase::Unbroken;
    std::size_t n_complex_pairs = 0;
    std::vector<std::size_t> which_levels;  // indices (sorted spectrum) of complex-pair members
};

/// Broken iff some conjugate pair has |Im E| > tol. Defective or unpairable
/// spectra are reported as Phase::Exceptional instead of throwing.
PhaseClassification classify_phase(const ComplexMatrix& h, double tol = kPhaseTol);

/// Model whose gamma and g are overwritten at every scan point; the single qubit ignores g.
using ModelTemplate = std::variant<SingleQubitParams, QubitArrayParams>;

ComplexMatrix model_hamiltonian(const ModelTemplate& model, double gamma, double g);

struct PhasePoint {
    double gamma = 0.0;
    double g = 0.0;
    Phase label = Phase::Unbroken;
    std::size_t n_complex_pairs = 0;
    std::vector<std::size_t> which_levels;
};

enum class BisectAxis { Gamma, G };

/// Boundary location bracketed along one grid axis.
struct BoundaryVertex {
    double gamma = 0.0;
    double g = 0.0;
    BisectAxis axis = BisectAxis::Gamma;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;

    double bracket_width() const { return bracket_hi - bracket_lo; }
};

struct Polyline {
    std::vector<BoundaryVertex> vertices;
};

struct PhaseDiagram {
    ModelTemplate model;
    std::vector<double> gamma_axis;
    std::vector<double> g_axis;
    std::vector<PhasePoint> points;  // points[i * g_axis.size() + j] is (gamma_axis[i], g_axis[j])
    double tol = kPhaseTol;
    std::vector<Polyline> boundaries;

    const PhasePoint& at(std::size_t i, std::size_t j) const { return points[i * g_axis.size() + j]; }
};

/// Classifies every grid point. `threads > 1` splits the grid across workers;
/// the result is identical to a serial scan.
PhaseDiagram scan(const ModelTemplate& model, std::span<const double> gamma_axis, std::span<const double> g_axis,
                  double tol = kPhaseTol, unsigned threads = 1);

/// Bisects every Unbroken/Broken grid edge to width below bisect_tol and chains
/// the vertices into polylines through shared grid cells. Throws NoBoundary
/// when the grid holds a single phase.
PhaseDiagram refine_boundary(const PhaseDiagram& pd, double bisect_tol);

}  // namespace pht
