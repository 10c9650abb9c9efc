#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "pht/cli.hpp"
#include "pht/grid.hpp"
#include "pht/phasemap.hpp"
#include "pht/plot.hpp"
#include "pht/pseudo.hpp"
#include "pht/response.hpp"
#include "pht/verify/suite.hpp"

namespace pht::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

// Shortest representation that round-trips; identical input gives identical text.
std::string num(double v) {
    if (std::isnan(v)) return "nan";
    return fmt::format("{}", v);
}

const char* to_string(GainConvention gc) { return gc == GainConvention::Full ? "full" : "half"; }
const char* to_string(Topology t) { return t == Topology::NearestNeighbor ? "nearest" : "all"; }

std::string describe(const RunConfig& c) {
    if (c.model == ModelKind::Single) return fmt::format("model=single delta={} gamma={}", num(c.delta), num(c.gamma));
    return fmt::format("model=array m={} delta={} epsilon={} gamma={} g={} gain-convention={} topology={}", c.m, num(c.delta),
                       num(c.epsilon), num(c.gamma), num(c.g), to_string(c.gain_convention), to_string(c.topology));
}

std::string header(std::string_view kind, const RunConfig& c, std::string_view extra = {}) {
    std::string h = fmt::format("# pht-{} v1 {}", kind, describe(c));
    if (!extra.empty()) h += fmt::format(" {}", extra);
    return h + "\n";
}

// Writes to the named file, or to the fallback stream when the path is empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path), os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError(fmt::format("cannot open '{}' for writing", path));
            os_ = file_.get();
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError(fmt::format("cannot open '{}' for writing", path));
    f << text;
}

void validate(const RunConfig& c) {
    if (c.model == ModelKind::Single) {
        for (const auto& s : c.sweeps) {
            if (s.name == "g" || s.name == "epsilon") {
                throw UsageError(fmt::format("the single-qubit model has no parameter '{}'", s.name));
            }
        }
    }
    if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
    if (!(c.bisect_tol > 0.0)) throw UsageError("--bisect-tol must be positive");
}

const Sweep* find_sweep(const RunConfig& c, std::string_view name) {
    for (const auto& s : c.sweeps) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

const char* tag_name(SpectralTag t) {
    switch (t) {
    case SpectralTag::Real: return "real";
    case SpectralTag::PairPlus: return "pair+";
    case SpectralTag::PairMinus: return "pair-";
    case SpectralTag::Unpaired: return "unpaired";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.sweeps.size() > 1) throw UsageError("spectrum takes at most one --sweep");

    if (c.sweeps.empty()) {
        EigenSystem es;
        try {
            es = eigendecompose(c.hamiltonian());
        } catch (const DefectiveMatrix& e) {
            err << "pht: " << e.what() << '\n';
            return kNumericalFailure;
        }
        Json j;
        j["schema"] = "pht-eigensystem v1";
        j["config"] = describe(c);
        j["eigenvalues"] = Json::array();
        for (auto e : es.eigenvalues) j["eigenvalues"].push_back(complex_json(e));
        j["classification"] = Json::array();
        for (const auto& entry : es.classification) j["classification"].push_back(tag_name(entry.tag));
        j["right"] = matrix_json(es.right);
        j["left"] = matrix_json(es.left);
        int code = kSuccess;
        try {
            const auto eta = build_eta(es);
            j["eta"] = matrix_json(eta.eta);
        } catch (const Error& e) {
            j["eta"] = nullptr;
            err << "pht: metric unavailable: " << e.what() << '\n';
            code = kNumericalFailure;
        }
        Sink sink(c.out, out);
        sink.stream() << j.dump(2) << '\n';
        return code;
    }

    const Sweep& sweep = c.sweeps.front();
    const auto values = sweep.range.values();
    const auto dim = std::size_t{1} << c.qubits();
    std::vector<std::vector<Complex>> rows;
    std::size_t failures = 0;
    for (double v : values) {
        const auto point = c.with(sweep.name, v);
        try {
            rows.push_back(eigendecompose(point.hamiltonian()).eigenvalues);
        } catch (const DefectiveMatrix&) {
            rows.emplace_back(dim, Complex(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()));
            ++failures;
            err << fmt::format("pht: {} = {}: defective Hamiltonian, row written as nan\n", sweep.name, num(v));
        }
    }

    Sink sink(c.out, out);
    auto& os = sink.stream();
    os << header("spectrum", c, fmt::format("sweep={}={}:{}:{}", sweep.name, num(sweep.range.start), num(sweep.range.stop),
                                               sweep.range.count));
    os << "sweep_value";
    for (std::size_t k = 1; k <= dim; ++k) os << ",re_E" << k;
    for (std::size_t k = 1; k <= dim; ++k) os << ",im_E" << k;
    os << '\n';
    for (std::size_t r = 0; r < values.size(); ++r) {
        os << num(values[r]);
        for (auto e : rows[r]) os << ',' << num(e.real());
        for (auto e : rows[r]) os << ',' << num(e.imag());
        os << '\n';
    }

    if (!c.svg.empty()) {
        Plot plot{fmt::format("Spectrum vs {}", sweep.name), sweep.name, "E", {}};
        for (std::size_t k = 0; k < dim; ++k) {
            PlotSeries re{dim <= 4 ? fmt::format("Re E{}", k + 1) : std::string{}, values, {}, kPalette[k % 10]};
            PlotSeries im{dim <= 4 ? fmt::format("Im E{}", k + 1) : std::string{}, values, {}, kPalette[k % 10], true};
            for (const auto& row : rows) {
                re.y.push_back(row[k].real());
                im.y.push_back(row[k].imag());
            }
            plot.series.push_back(std::move(re));
            plot.series.push_back(std::move(im));
        }
        write_file(c.svg, plot.to_svg());
    }
    return failures == values.size() ? kNumericalFailure : kSuccess;
}

struct Prepared {
    EigenSystem es;
    MetricOperator eta;
    Observable obs;
    StateVector psi;
};

Prepared prepare(const RunConfig& c) {
    if (!c.sweeps.empty()) throw UsageError("this command does not take --sweep");
    Prepared p;
    p.es = eigendecompose(c.hamiltonian());
    p.eta = build_eta(p.es);
    p.obs = lift_observable(p.eta, total_polarization(c.qubits()), "total-z");
    switch (c.initial.kind) {
    case InitialState::Kind::Ground: p.psi = ground_state(p.es); break;
    case InitialState::Kind::Index:
        if (c.initial.index >= p.es.dim()) {
            throw UsageError(fmt::format("initial index {} out of range for dimension {}", c.initial.index, p.es.dim()));
        }
        p.psi = StateVector::eigenstate(p.es, c.initial.index);
        break;
    case InitialState::Kind::Up: {
        ComplexVector up = ComplexVector::Zero(static_cast<Eigen::Index>(p.es.dim()));
        up[0] = 1.0;
        p.psi = StateVector::euclidean(up);
        break;
    }
    }
    return p;
}

std::string initial_text(const InitialState& s) {
    switch (s.kind) {
    case InitialState::Kind::Ground: return "ground";
    case InitialState::Kind::Up: return "up";
    case InitialState::Kind::Index: return fmt::format("index:{}", s.index);
    }
    return "?";
}

int cmd_response(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (!(c.tmax > 0.0)) throw UsageError("--tmax must be positive");
    if (c.tsteps < 2) throw UsageError("--tsteps must be at least 2");
    const auto p = prepare(c);
    const auto times = uniform_grid(0.0, c.tmax, c.tsteps);
    const auto rs = correlation(p.psi, p.eta, p.es, p.obs, times);

    try {
        const auto env = envelope_classification(rs);
        err << fmt::format("pht: envelope {} (rate {:.6g}, {} peaks)\n", pht::to_string(env.kind), env.rate, env.peaks);
    } catch (const InsufficientSpan& e) {
        err << "pht: envelope not classified: " << e.what() << '\n';
    }

    Sink sink(c.out, out);
    auto& os = sink.stream();
    os << header("response", c, fmt::format("initial={} tmax={} tsteps={}", initial_text(c.initial), num(c.tmax), c.tsteps));
    os << "t,re_C,im_C,chi\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        os << num(times[k]) << ',' << num(rs.c_values[k].real()) << ',' << num(rs.c_values[k].imag()) << ','
           << num(rs.chi_values[k]) << '\n';
    }
    if (!c.svg.empty()) {
        Plot plot{"Susceptibility chi(t)", "t", "chi", {{"", rs.times, rs.chi_values, kPalette[0]}}};
        write_file(c.svg, plot.to_svg());
    }
    return kSuccess;
}

int cmd_chi_omega(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto p = prepare(c);
    const auto omegas = c.omega.values();
    const auto sr = spectral_decomposition(p.psi, p.eta, p.es, p.obs);
    SusceptibilitySpectrum spec;
    try {
        spec = susceptibility_spectrum(sr, omegas, c.broadening);
    } catch (const DivergentTransform& e) {
        err << "pht: " << e.what() << '\n';
        return kNumericalFailure;
    }
    Sink sink(c.out, out);
    auto& os = sink.stream();
    os << header("chi-omega", c,
                 fmt::format("initial={} omega={}:{}:{} broadening={}", initial_text(c.initial), num(c.omega.start),
                             num(c.omega.stop), c.omega.count, num(c.broadening)));
    os << "omega,re_chi,im_chi,abs_chi\n";
    std::vector<double> magnitude;
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        const Complex z = spec.chi_omega[k];
        magnitude.push_back(std::abs(z));
        os << num(omegas[k]) << ',' << num(z.real()) << ',' << num(z.imag()) << ',' << num(magnitude.back()) << '\n';
    }
    if (!c.svg.empty()) {
        Plot plot{"Dynamic susceptibility |chi(omega)|", "omega", "|chi|", {{"", omegas, magnitude, kPalette[0]}}};
        write_file(c.svg, plot.to_svg());
    }
    return kSuccess;
}

std::string boundary_path(const RunConfig& c) {
    if (!c.boundary_out.empty()) return c.boundary_out;
    if (c.out.empty()) return {};
    const auto slash = c.out.find_last_of('/');
    const auto dot = c.out.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return c.out + "_boundary";
    return c.out.substr(0, dot) + "_boundary" + c.out.substr(dot);
}

int cmd_phase_diagram(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const Sweep* gamma_sweep = find_sweep(c, "gamma");
    const Sweep* g_sweep = find_sweep(c, "g");
    if (gamma_sweep == nullptr) throw UsageError("phase-diagram needs --sweep gamma=A:B:N");
    if (c.model == ModelKind::Array && g_sweep == nullptr) throw UsageError("phase-diagram for the array needs --sweep g=A:B:N");
    for (const auto& s : c.sweeps) {
        if (s.name != "gamma" && s.name != "g") throw UsageError(fmt::format("phase-diagram cannot sweep '{}'", s.name));
    }
    if (c.sweeps.size() != (g_sweep ? 2U : 1U)) throw UsageError("each swept parameter may appear only once");

    ModelTemplate model;
    if (c.model == ModelKind::Single) {
        model = SingleQubitParams{c.delta, 0.0};
    } else {
        QubitArrayParams p;
        p.m = c.m;
        p.delta = c.delta;
        p.epsilon = c.epsilon;
        p.gain_convention = c.gain_convention;
        p.topology = c.topology;
        model = p;
    }
    const auto gammas = gamma_sweep->range.values();
    const auto gs = g_sweep ? g_sweep->range.values() : std::vector<double>{c.g};
    const unsigned threads = c.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : c.threads;
    auto pd = scan(model, gammas, gs, c.tol, threads);
    try {
        pd = refine_boundary(pd, c.bisect_tol);
    } catch (const NoBoundary& e) {
        err << "pht: " << e.what() << '\n';
    }

    const std::string extra = fmt::format("tol={} bisect-tol={}", num(c.tol), num(c.bisect_tol));
    {
        Sink sink(c.out, out);
        auto& os = sink.stream();
        os << header("phase-points", c, extra);
        os << "gamma,g,label,n_pairs\n";
        for (const auto& p : pd.points) {
            os << num(p.gamma) << ',' << num(p.g) << ',' << pht::to_string(p.label) << ',' << p.n_complex_pairs << '\n';
        }
    }
    {
        Sink sink(boundary_path(c), out);
        auto& os = sink.stream();
        os << header("phase-boundary", c, extra);
        os << "polyline_id,gamma,g,bracket_width\n";
        for (std::size_t id = 0; id < pd.boundaries.size(); ++id) {
            for (const auto& v : pd.boundaries[id].vertices) {
                os << id << ',' << num(v.gamma) << ',' << num(v.g) << ',' << num(v.bracket_width()) << '\n';
            }
        }
    }
    if (!c.svg.empty()) {
        Plot plot{"Phase diagram", "g", "gamma", {}};
        PlotSeries unbroken{"unbroken", {}, {}, "#1f77b4", true};
        PlotSeries broken{"broken", {}, {}, "#d62728", true};
        PlotSeries exceptional{"exceptional", {}, {}, "#000000", true};
        for (const auto& p : pd.points) {
            auto& s = p.label == Phase::Broken ? broken : (p.label == Phase::Unbroken ? unbroken : exceptional);
            s.x.push_back(p.g);
            s.y.push_back(p.gamma);
        }
        plot.series = {unbroken, broken, exceptional};
        for (const auto& line : pd.boundaries) {
            PlotSeries s{"", {}, {}, "#000000"};
            for (const auto& v : line.vertices) {
                s.x.push_back(v.g);
                s.y.push_back(v.gamma);
            }
            s.points = line.vertices.size() == 1;
            plot.series.push_back(std::move(s));
        }
        write_file(c.svg, plot.to_svg());
    }
    return kSuccess;
}

int cmd_verify(std::ostream& out) {
    const auto results = verify::run_suite();
    verify::print_report(out, results, true);
    const bool ok = std::all_of(results.begin(), results.end(), [](const verify::Criterion& r) { return r.passed(); });
    return ok ? kSuccess : kVerifyFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudo-Hermitian qubit toolkit: spectra, linear response and phase diagrams", "pht"};
    app.set_help_all_flag("--help-all");
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string model = "single", gain = "full", topology = "nearest", initial = "ground", omega;
    std::vector<std::string> sweeps;
    RunConfig cfg;
    app.add_option("--model", model, "single | array")->check(CLI::IsMember({"single", "array"}));
    app.add_option("--m", cfg.m, "number of qubits in the array");
    app.add_option("--delta", cfg.delta, "tunneling amplitude");
    app.add_option("--epsilon", cfg.epsilon, "bias");
    app.add_option("--gamma", cfg.gamma, "gain/loss strength");
    app.add_option("--g", cfg.g, "exchange coupling");
    app.add_option("--gain-convention", gain, "full | half")->check(CLI::IsMember({"full", "half"}));
    app.add_option("--topology", topology, "nearest | all")->check(CLI::IsMember({"nearest", "all"}));
    app.add_option("--initial", initial, "ground | up | index:N");
    app.add_option("--sweep", sweeps, "NAME=A:B:N (repeatable)")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--tmax", cfg.tmax, "end of the time grid");
    app.add_option("--tsteps", cfg.tsteps, "number of time samples");
    app.add_option("--omega", omega, "frequency grid A:B:N");
    app.add_option("--broadening", cfg.broadening, "damping of the frequency transform");
    app.add_option("--tol", cfg.tol, "phase classification tolerance on |Im E|");
    app.add_option("--bisect-tol", cfg.bisect_tol, "boundary bisection bracket width");
    app.add_option("--threads", cfg.threads, "worker threads for phase scans (0 = all cores)");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--svg", cfg.svg, "write an SVG plot");
    app.add_option("--boundary-out", cfg.boundary_out, "boundary CSV path for phase-diagram");
    app.set_config("--config", "", "key = value configuration file; flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);

    for (const char* name : {"spectrum", "response", "chi-omega", "phase-diagram", "verify"}) {
        app.add_subcommand(name)->fallthrough();
    }
    app.get_subcommand("spectrum")->description("eigenvalues at one point (JSON) or along one --sweep (CSV)");
    app.get_subcommand("response")->description("correlation function and chi(t) on [0, tmax]");
    app.get_subcommand("chi-omega")->description("dynamic susceptibility chi(omega)");
    app.get_subcommand("phase-diagram")->description("phase labels and refined boundaries over gamma (and g)");
    app.get_subcommand("verify")->description("run the built-in acceptance suite");
    app.require_subcommand(1);

    // CLI11 consumes a reversed argument list without the program name.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "pht: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        cfg.model = model == "array" ? ModelKind::Array : ModelKind::Single;
        cfg.gain_convention = gain == "half" ? GainConvention::Half : GainConvention::Full;
        cfg.topology = topology == "all" ? Topology::AllPairs : Topology::NearestNeighbor;
        cfg.initial = parse_initial(initial);
        for (const auto& s : sweeps) cfg.sweeps.push_back(parse_sweep(s));
        if (!omega.empty()) cfg.omega = parse_range(omega);
        validate(cfg);

        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "verify") return cmd_verify(out);
        if (name == "spectrum") return cmd_spectrum(cfg, out, err);
        if (name == "response") return cmd_response(cfg, out, err);
        if (name == "chi-omega") return cmd_chi_omega(cfg, out, err);
        return cmd_phase_diagram(cfg, out, err);
    } catch (const UsageError& e) {
        err << "pht: " << e.what() << '\n';
        return kUsageError;
    } catch (const InvalidParameter& e) {
        err << "pht: " << e.what() << '\n';
        return kUsageError;
    } catch (const DimensionBudget& e) {
        err << "pht: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "pht: numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

}  // namespace pht::cli
