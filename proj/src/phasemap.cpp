#include "pht/phasemap.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include <fmt/format.h>

namespace pht {

const char* to_string(Phase phase) {
    switch (phase) {
    case Phase::Unbroken: return "unbroken";
    case Phase::Broken: return "broken";
    case Phase::Exceptional: return "exceptional";
    }
    return "unknown";
}

PhaseClassification classify_phase(const ComplexMatrix& h, double tol) {
    PhaseClassification out;
    try {
        const auto es = eigendecompose(h);
        const auto tags = pair_conjugates(es.eigenvalues, tol);
        for (std::size_t k = 0; k < tags.size(); ++k) {
            switch (tags[k].tag) {
            case SpectralTag::Real: break;
            case SpectralTag::PairPlus: ++out.n_complex_pairs; [[fallthrough]];
            case SpectralTag::PairMinus: out.which_levels.push_back(k); break;
            case SpectralTag::Unpaired: out.label = Phase::Exceptional; return out;
            }
        }
    } catch (const DefectiveMatrix&) {
        out.label = Phase::Exceptional;
        out.n_complex_pairs = 0;
        out.which_levels.clear();
        return out;
    }
    out.label = out.n_complex_pairs > 0 ? Phase::Broken : Phase::Unbroken;
    return out;
}

ComplexMatrix model_hamiltonian(const ModelTemplate& model, double gamma, double g) {
    return std::visit(
        [&](auto params) -> ComplexMatrix {
            using T = decltype(params);
            params.gamma = gamma;
            if constexpr (std::is_same_v<T, SingleQubitParams>) {
                return single_qubit_hamiltonian(params);
            } else {
                params.g = g;
                return qubit_array_hamiltonian(params);
            }
        },
        model);
}

namespace {

void require_axis(std::span<const double> axis, const char* name) {
    if (axis.empty()) throw InvalidParameter(fmt::format("scan: {} axis is empty", name));
    for (std::size_t k = 1; k < axis.size(); ++k) {
        if (!(axis[k] > axis[k - 1])) throw InvalidParameter(fmt::format("scan: {} axis must be strictly increasing", name));
    }
}

PhasePoint classify_point(const ModelTemplate& model, double gamma, double g, double tol) {
    auto c = classify_phase(model_hamiltonian(model, gamma, g), tol);
    return {gamma, g, c.label, c.n_complex_pairs, std::move(c.which_levels)};
}

}  // namespace

PhaseDiagram scan(const ModelTemplate& model, std::span<const double> gamma_axis, std::span<const double> g_axis,
                  double tol, unsigned threads) {
    require_axis(gamma_axis, "gamma");
    require_axis(g_axis, "g");
    PhaseDiagram pd{model, {gamma_axis.begin(), gamma_axis.end()}, {g_axis.begin(), g_axis.end()}, {}, tol, {}};
    const std::size_t ng = g_axis.size();
    const std::size_t total = gamma_axis.size() * ng;
    pd.points.resize(total);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            pd.points[idx] = classify_point(model, gamma_axis[idx / ng], g_axis[idx % ng], tol);
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, total));
    if (workers == 1) {
        work(0, total);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (total + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(total, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
    }
    return pd;
}

namespace {

bool definite(Phase p) { return p != Phase::Exceptional; }

BoundaryVertex bisect(const PhaseDiagram& pd, BisectAxis axis, double fixed, double lo, double hi, Phase lo_label,
                      double bisect_tol) {
    auto classify_at = [&](double v) {
        const double gamma = axis == BisectAxis::Gamma ? v : fixed;
        const double g = axis == BisectAxis::Gamma ? fixed : v;
        return classify_phase(model_hamiltonian(pd.model, gamma, g), pd.tol).label;
    };
    while (hi - lo >= bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const Phase label = classify_at(mid);
        if (label == Phase::Exceptional) {
            lo = hi = mid;
            break;
        }
        (label == lo_label ? lo : hi) = mid;
    }
    const double at = 0.5 * (lo + hi);
    BoundaryVertex v;
    v.axis = axis;
    v.bracket_lo = lo;
    v.bracket_hi = hi;
    v.gamma = axis == BisectAxis::Gamma ? at : fixed;
    v.g = axis == BisectAxis::Gamma ? fixed : at;
    return v;
}

std::vector<Polyline> chain(const std::vector<BoundaryVertex>& vertices,
                            const std::vector<std::vector<std::size_t>>& cells) {
    const auto n = vertices.size();
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    auto link = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        adj[a].push_back(edges.size());
        adj[b].push_back(edges.size());
        edges.emplace_back(a, b);
    };
    for (const auto& cell : cells) {
        if (cell.size() == 2) {
            link(cell[0], cell[1]);
        } else if (cell.size() == 4) {
            link(cell[0], cell[1]);
            link(cell[2], cell[3]);
        } else {
            for (std::size_t k = 1; k < cell.size(); ++k) link(cell[k - 1], cell[k]);
        }
    }

    std::vector<bool> used(edges.size(), false);
    std::vector<bool> placed(n, false);
    std::vector<Polyline> out;
    auto walk = [&](std::size_t start) {
        Polyline line;
        std::size_t cur = start;
        line.vertices.push_back(vertices[cur]);
        placed[cur] = true;
        for (;;) {
            std::size_t next_edge = edges.size();
            for (auto e : adj[cur]) {
                if (!used[e]) {
                    next_edge = e;
                    break;
                }
            }
            if (next_edge == edges.size()) break;
            used[next_edge] = true;
            cur = edges[next_edge].first == cur ? edges[next_edge].second : edges[next_edge].first;
            line.vertices.push_back(vertices[cur]);
            placed[cur] = true;
        }
        out.push_back(std::move(line));
    };
    for (std::size_t v = 0; v < n; ++v) {
        const auto free_edges = std::count_if(adj[v].begin(), adj[v].end(), [&](auto e) { return !used[e]; });
        if (free_edges == 1 || (free_edges == 0 && !placed[v])) walk(v);
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (std::any_of(adj[v].begin(), adj[v].end(), [&](auto e) { return !used[e]; })) walk(v);
    }
    return out;
}

}  // namespace

PhaseDiagram refine_boundary(const PhaseDiagram& pd, double bisect_tol) {
    if (!(bisect_tol > 0.0)) throw InvalidParameter("refine_boundary: bisect_tol must be positive");
    const std::size_t na = pd.gamma_axis.size();
    const std::size_t nb = pd.g_axis.size();

    std::vector<BoundaryVertex> vertices;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> gamma_edge;  // (i, j) -> vertex on (i,j)-(i+1,j)
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> g_edge;      // (i, j) -> vertex on (i,j)-(i,j+1)
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> corner;      // exceptional grid points

    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            const auto& p = pd.at(i, j);
            if (p.label == Phase::Exceptional) {
                BoundaryVertex v{p.gamma, p.g, BisectAxis::Gamma, p.gamma, p.gamma};
                corner[{i, j}] = vertices.size();
                vertices.push_back(v);
                continue;
            }
            if (i + 1 < na) {
                const auto& q = pd.at(i + 1, j);
                if (definite(q.label) && q.label != p.label) {
                    gamma_edge[{i, j}] = vertices.size();
                    vertices.push_back(bisect(pd, BisectAxis::Gamma, p.g, p.gamma, q.gamma, p.label, bisect_tol));
                }
            }
            if (j + 1 < nb) {
                const auto& q = pd.at(i, j + 1);
                if (definite(q.label) && q.label != p.label) {
                    g_edge[{i, j}] = vertices.size();
                    vertices.push_back(bisect(pd, BisectAxis::G, p.gamma, p.g, q.g, p.label, bisect_tol));
                }
            }
        }
    }
    if (vertices.empty()) throw NoBoundary("refine_boundary: the scanned grid contains a single phase");

    std::vector<std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i + 1 < na; ++i) {
        for (std::size_t j = 0; j + 1 < nb; ++j) {
            std::vector<std::size_t> members;
            auto take = [&](const auto& map, std::size_t a, std::size_t b) {
                if (auto it = map.find({a, b}); it != map.end()) members.push_back(it->second);
            };
            // Walk the cell boundary counter-clockwise so that pairs (0,1), (2,3) are adjacent crossings.
            take(corner, i, j);
            take(gamma_edge, i, j);
            take(corner, i + 1, j);
            take(g_edge, i + 1, j);
            take(corner, i + 1, j + 1);
            take(gamma_edge, i, j + 1);
            take(corner, i, j + 1);
            take(g_edge, i, j);
            if (members.size() >= 2) cells.push_back(std::move(members));
        }
    }

    PhaseDiagram out = pd;
    out.boundaries = chain(vertices, cells);
    return out;
}

}  // namespace pht
