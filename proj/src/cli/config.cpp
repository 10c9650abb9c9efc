#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "pht/cli.hpp"
#include "pht/grid.hpp"

namespace pht::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw UsageError(fmt::format("{}: '{}' is not a finite number", what, text));
    }
    return v;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
    text = trim(text);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError(fmt::format("{}: '{}' is not a non-negative integer", what, text));
    }
    return v;
}

}  // namespace

std::vector<double> Range::values() const {
    if (count == 0) throw UsageError("range is empty");
    if (count > 1 && !(stop > start)) throw UsageError(fmt::format("range {}:{}:{} must increase", start, stop, count));
    return uniform_grid(start, stop, count);
}

Range parse_range(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw UsageError(fmt::format("range '{}' must have the form A:B:N", text));
    }
    Range r;
    r.start = parse_double(text.substr(0, first), "range start");
    r.stop = parse_double(text.substr(first + 1, second - first - 1), "range stop");
    r.count = parse_count(text.substr(second + 1), "range count");
    if (r.count == 0) throw UsageError(fmt::format("range '{}' is empty", text));
    if (r.count > 1 && !(r.stop > r.start)) throw UsageError(fmt::format("range '{}' must increase", text));
    return r;
}

Sweep parse_sweep(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw UsageError(fmt::format("sweep '{}' must have the form NAME=A:B:N", text));
    Sweep s;
    s.name = std::string(trim(text.substr(0, eq)));
    if (s.name != "gamma" && s.name != "g" && s.name != "epsilon" && s.name != "delta") {
        throw UsageError(fmt::format("cannot sweep '{}'; expected gamma, g, epsilon or delta", s.name));
    }
    s.range = parse_range(text.substr(eq + 1));
    return s;
}

InitialState parse_initial(std::string_view text) {
    if (text == "ground") return {InitialState::Kind::Ground, 0};
    if (text == "up") return {InitialState::Kind::Up, 0};
    if (text.starts_with("index:")) return {InitialState::Kind::Index, parse_count(text.substr(6), "initial index")};
    throw UsageError(fmt::format("initial state '{}' must be ground, up or index:N", text));
}

ComplexMatrix RunConfig::hamiltonian() const {
    if (model == ModelKind::Single) return single_qubit_hamiltonian({delta, gamma});
    QubitArrayParams p;
    p.m = m;
    p.delta = delta;
    p.epsilon = epsilon;
    p.gamma = gamma;
    p.g = g;
    p.gain_convention = gain_convention;
    p.topology = topology;
    return qubit_array_hamiltonian(p);
}

RunConfig RunConfig::with(std::string_view name, double value) const {
    RunConfig c = *this;
    if (name == "gamma") {
        c.gamma = value;
    } else if (name == "g") {
        c.g = value;
    } else if (name == "epsilon") {
        c.epsilon = value;
    } else if (name == "delta") {
        c.delta = value;
    } else {
        throw UsageError(fmt::format("unknown parameter '{}'", name));
    }
    return c;
}

}  // namespace pht::cli
