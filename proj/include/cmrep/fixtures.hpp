#pragma once

// Bundled input corpus; identical to the files under data/.

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cmrep::fixtures {

inline constexpr std::string_view bubble = R"json({
  "kind": "graph",
  "name": "bubble",
  "vertices": ["a", "b"],
  "lines": [
    {"id": 1, "from": "a", "to": "b", "mass2": "1"},
    {"id": 2, "from": "a", "to": "b", "mass2": "1"}
  ],
  "external_legs": [
    {"label": "p1", "vertex": "a"},
    {"label": "p2", "vertex": "b"}
  ],
  "invariants": [
    {"symbol": "s", "legs": ["p1"]}
  ],
  "invariant_values": {"s": "1"}
}
)json";

inline constexpr std::string_view gw_one_line = R"json({
  "kind": "ribbon",
  "name": "gw_one_line",
  "model": "GW",
  "L": 1,
  "F": 2,
  "g": 0,
  "s": "2",
  "parity_n": 1,
  "B": [
    [0, 1],
    [-1, 0]
  ],
  "P": [
    [1, 0],
    [0, 1]
  ],
  "externals": [
    ["1", "0", "0", "1"],
    ["0", "1", "0", "1"]
  ],
  "prefactor": "1"
}
)json";

inline constexpr std::string_view gw_two_line = R"json({
  "kind": "ribbon",
  "name": "gw_two_line",
  "model": "GW",
  "L": 2,
  "F": 2,
  "g": 0,
  "s": "1/2",
  "parity_n": 2,
  "B": [
    [0, 1, 2, -1, 1],
    [-1, 0, 1, 3, -2],
    [-2, -1, 0, 1, 1],
    [1, -3, -1, 0, 2],
    [-1, 2, -1, -2, 0]
  ],
  "P": [
    [1, 0, 0, 0, 0],
    [0, 1, 0, 0, 1],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 1, -1]
  ],
  "externals": [
    ["1", "0", "0", "1"],
    ["0", "1", "0", "1"],
    ["1", "1", "0", "0"],
    ["0", "0", "1", "1"]
  ],
  "prefactor": "1"
}
)json";

inline constexpr std::string_view lsz_two_line = R"json({
  "kind": "ribbon",
  "name": "lsz_two_line",
  "model": "LSZ",
  "L": 2,
  "F": 3,
  "g": 0,
  "s": "1/2",
  "parity_n": 1,
  "B": [
    [0, 1, 2, 1],
    [-1, 0, 1, 2],
    [-2, -1, 0, 1],
    [-1, -2, -1, 0]
  ],
  "P": [],
  "externals": [],
  "prefactor": "1"
}
)json";

inline constexpr std::string_view single_line = R"json({
  "kind": "graph",
  "name": "single_line",
  "vertices": ["a", "b"],
  "lines": [
    {"id": 1, "from": "a", "to": "b", "mass2": "1"}
  ],
  "external_legs": [
    {"label": "p1", "vertex": "a"},
    {"label": "p2", "vertex": "b"}
  ],
  "invariants": [
    {"symbol": "s", "legs": ["p1"]}
  ],
  "invariant_values": {"s": "1"}
}
)json";

inline constexpr std::string_view tree = R"json({
  "kind": "graph",
  "name": "tree",
  "vertices": ["a", "b", "c"],
  "lines": [
    {"id": 1, "from": "a", "to": "b", "mass2": "1"},
    {"id": 2, "from": "b", "to": "c", "mass2": "1"}
  ],
  "external_legs": [
    {"label": "p1", "vertex": "a"},
    {"label": "p2", "vertex": "b"},
    {"label": "p3", "vertex": "c"}
  ],
  "invariants": [
    {"symbol": "s1", "legs": ["p1"]},
    {"symbol": "s2", "legs": ["p2"]},
    {"symbol": "s3", "legs": ["p3"]}
  ],
  "invariant_values": {"s1": "1", "s2": "1", "s3": "1"}
}
)json";

inline constexpr std::string_view triangle = R"json({
  "kind": "graph",
  "name": "triangle",
  "vertices": ["a", "b", "c"],
  "lines": [
    {"id": 1, "from": "a", "to": "b", "mass2": "1"},
    {"id": 2, "from": "b", "to": "c", "mass2": "1"},
    {"id": 3, "from": "c", "to": "a", "mass2": "1"}
  ],
  "external_legs": [
    {"label": "p1", "vertex": "a"},
    {"label": "p2", "vertex": "b"},
    {"label": "p3", "vertex": "c"}
  ],
  "invariants": [
    {"symbol": "s1", "legs": ["p1"]},
    {"symbol": "s2", "legs": ["p2"]},
    {"symbol": "s3", "legs": ["p3"]}
  ],
  "invariant_values": {"s1": "1", "s2": "1", "s3": "1"}
}
)json";

/// Name -> JSON text for every bundled input.
inline const std::map<std::string, std::string_view>& all() {
    static const std::map<std::string, std::string_view> table = {
        {"bubble", bubble},
        {"gw_one_line", gw_one_line},
        {"gw_two_line", gw_two_line},
        {"lsz_two_line", lsz_two_line},
        {"single_line", single_line},
        {"tree", tree},
        {"triangle", triangle},
    };
    return table;
}

}  // namespace cmrep::fixtures
