#pragma once

#include <string>

#include "arrcohom/arrangement.hpp"

namespace arrcohom {

/// Named in-repo fixtures, also reachable from the CLI by name.
/// "decomposable" is x, y, x+y, z in Q^3 (a product arrangement);
/// "two-triples" is x, y, x+y, z, y+z in Q^3 (two triple points).
inline Arrangement named_fixture(const std::string& name) {
    auto R0 = Rat(0), R1 = Rat(1);
    if (name == "decomposable") {
        return make_arrangement("decomposable", 3,
                                {{R1, R0, R0},
                                 {R0, R1, R0},
                                 {R1, R1, R0},
                                 {R0, R0, R1}});
    }
    if (name == "two-triples") {
        return make_arrangement("two-triples", 3,
                                {{R1, R0, R0},
                                 {R0, R1, R0},
                                 {R1, R1, R0},
                                 {R0, R0, R1},
                                 {R0, R1, R1}});
    }
    if (name == "braid" || name == "braid4") return braid_arrangement(4);
    if (name == "braid-essential") return essentialize(braid_arrangement(4));
    throw InputError("unknown fixture: " + name);
}

}  // namespace arrcohom
