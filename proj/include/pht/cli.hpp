#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pht/models.hpp"

namespace pht::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerifyFailure = 1,
    kUsageError = 2,
    kNumericalFailure = 3,
};

struct Range {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;

    std::vector<double> values() const;
};

struct Sweep {
    std::string name;  // gamma | g | epsilon | delta
    Range range;
};

enum class ModelKind { Single, Array };

struct InitialState {
    enum class Kind { Ground, Up, Index } kind = Kind::Ground;
    std::size_t index = 0;
};

struct RunConfig {
    ModelKind model = ModelKind::Single;
    int m = 2;
    double delta = 1.0;
    double epsilon = 0.0;
    double gamma = 0.0;
    double g = 0.0;
    GainConvention gain_convention = GainConvention::Full;
    Topology topology = Topology::NearestNeighbor;
    InitialState initial;
    std::vector<Sweep> sweeps;
    double tmax = 20.0;
    std::size_t tsteps = 2001;
    Range omega{0.0, 4.0, 4001};
    double broadening = 0.01;
    double tol = 1e-8;
    double bisect_tol = 1e-6;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::string out;
    std::string svg;
    std::string boundary_out;

    ComplexMatrix hamiltonian() const;
    /// Copy with one named parameter (gamma, g, epsilon, delta) replaced.
    RunConfig with(std::string_view name, double value) const;
    int qubits() const { return model == ModelKind::Single ? 1 : m; }
};

/// Thrown for malformed user input; maps to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

Range parse_range(std::string_view text);
Sweep parse_sweep(std::string_view text);
InitialState parse_initial(std::string_view text);

/// Full command-line entry point; `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pht::cli
