#pragma once

#include <random>
#include <string>
#include <vector>

#include "cmrep/io.hpp"
#include "cmrep/polynomials.hpp"
#include "oracles.hpp"

namespace support {

inline cmrep::GraphInput graph(const std::string& name) { return cmrep::graph_from_json(cmrep::load_document(name)); }

inline cmrep::RibbonData ribbon(const std::string& name) {
    return cmrep::ribbon_from_json(cmrep::load_document(name)).ribbon;
}

inline oracle::PolyMap as_map(const cmrep::PolynomialSum& p) {
    oracle::PolyMap out;
    for (const auto& m : p.monomials) out[{m.exponents, m.symbol}] += m.coefficient;
    return out;
}

/// Connected multigraph on `V` vertices with `L` lines (self-loops and
/// parallel lines allowed), a leg on every vertex and an invariant per
/// nontrivial leg bipartition.
inline cmrep::FeynmanGraph random_multigraph(std::mt19937_64& rng, std::size_t V, std::size_t L) {
    std::vector<std::string> verts;
    for (std::size_t i = 0; i < V; ++i) verts.push_back("v" + std::to_string(i));
    std::vector<cmrep::Line> lines;
    // A random tree first, then extra lines anywhere.
    for (std::size_t i = 1; i < V && lines.size() < L; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        lines.push_back({static_cast<int>(lines.size()) + 1, verts[pick(rng)], verts[i], 1});
    }
    std::uniform_int_distribution<std::size_t> any(0, V - 1);
    while (lines.size() < L) lines.push_back({static_cast<int>(lines.size()) + 1, verts[any(rng)], verts[any(rng)], 1});
    std::vector<cmrep::ExternalLeg> legs;
    for (std::size_t i = 0; i < V; ++i) legs.push_back({verts[i], "p" + std::to_string(i)});
    std::vector<cmrep::InvariantEntry> invariants;
    // Sides containing p0, excluding the full set.
    for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << (V - 1)); ++m) {
        std::vector<std::string> side = {"p0"};
        for (std::size_t i = 1; i < V; ++i) {
            if (m >> (i - 1) & 1u) side.push_back("p" + std::to_string(i));
        }
        invariants.push_back({side, "s" + std::to_string(m)});
    }
    return cmrep::FeynmanGraph(verts, lines, legs, invariants);
}

}  // namespace support
