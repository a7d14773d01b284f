#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace covergrowth::examples {

struct BuiltinExample {
    std::string_view name;
    std::string_view text;
};

inline constexpr std::string_view kFree2 =
    "# Free group of rank two; cyclic covers gain one handle per sheet.\n"
    "name free2\n"
    "gens x y\n"
    "map x=1 y=0\n";

inline constexpr std::string_view kHeisenbergE0 =
    "# Three-torus, the trivial circle bundle over the torus.\n"
    "name heisenberg_e0\n"
    "gens x y z\n"
    "rel [x,y]\n"
    "rel [x,z]\n"
    "rel [y,z]\n"
    "map x=1 y=0 z=0\n"
    "flags closed3manifold beta1=3\n";

inline constexpr std::string_view kHeisenbergE1 =
    "# Nilmanifold: circle bundle over the torus with Euler number one.\n"
    "name heisenberg_e1\n"
    "gens x y z\n"
    "rel [x,y] z^-1\n"
    "rel [x,z]\n"
    "rel [y,z]\n"
    "map x=1 y=0 z=0\n"
    "flags closed3manifold beta1=2\n";

inline constexpr std::string_view kTrefoil0Surgery =
    "# Zero-framed surgery on the trefoil knot.\n"
    "name trefoil_0surgery\n"
    "gens u v\n"
    "rel u^2 v^-3\n"
    "rel u^2 (u v^-1)^-6\n"
    "map u=3 v=2\n"
    "flags closed3manifold beta1=1\n";

inline constexpr std::string_view kFig80Surgery =
    "# Torus bundle over the circle with Anosov monodromy (trace three).\n"
    "name fig8_0surgery\n"
    "gens x y s\n"
    "rel [x,y]\n"
    "rel s x s^-1 y^-1 x^-2\n"
    "rel s y s^-1 y^-1 x^-1\n"
    "map x=0 y=0 s=1\n"
    "flags closed3manifold beta1=1\n";

inline constexpr std::array<BuiltinExample, 5> kBuiltins{{
    {"free2", kFree2},
    {"heisenberg_e0", kHeisenbergE0},
    {"heisenberg_e1", kHeisenbergE1},
    {"trefoil_0surgery", kTrefoil0Surgery},
    {"fig8_0surgery", kFig80Surgery},
}};

inline std::optional<std::string_view> find(std::string_view name) {
    for (const BuiltinExample& b : kBuiltins)
        if (b.name == name) return b.text;
    return std::nullopt;
}

} // namespace covergrowth::examples
