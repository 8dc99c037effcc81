#ifndef ARRHOM_FOX_ORACLE_HPP
#define ARRHOM_FOX_ORACLE_HPP

// Twisted h_1 from a wiring-diagram presentation of the fundamental group
// and Fox derivatives. Shares nothing with the chamber computation beyond
// exact arithmetic and line intersection.

#include <cstdint>
#include <vector>

#include "arrhom/exact_field.hpp"
#include "arrhom/geometry.hpp"
#include "arrhom/local_system.hpp"

namespace arrhom {

/// Affine arrangement obtained by sending one line to infinity.
struct DeconedArrangement {
    int removed = -1;
    std::vector<Line> lines;        // non-vertical, ids 0..n-2
    std::vector<int> original_ids;  // lines[i] came from original_ids[i]
    LocalSystem local_system;       // restricted to the remaining lines
    Mat3 transform;                 // third row is the removed line
};

/// Moves `line` to infinity with a seeded frame in which no remaining line is
/// vertical and no two affine intersection points share an x-coordinate.
/// Throws NormalizationFailed if no such frame is found.
DeconedArrangement decone(const Arrangement& arr, const LocalSystem& ls, int line,
                          std::uint64_t seed = 1);

/// Point-line incidences among the affine intersection points of a deconed
/// arrangement, as sorted original line ids.
std::vector<std::vector<int>> affine_incidences(const DeconedArrangement& dec);

/// Free-group word: letter g+1 is generator g, -(g+1) its inverse.
using Word = std::vector<int>;

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

struct Crossing {
    Rational x;
    int first = 0;   // lowest position of the block
    int last = 0;    // highest position of the block
    std::vector<int> wires;  // deconed line ids, bottom to top before the crossing
};

/// Sweep of a deconed arrangement by increasing x. Wires at x = -infinity are
/// ordered bottom to top by decreasing slope, parallel wires by increasing
/// intercept.
struct WiringDiagram {
    std::vector<int> initial_order;
    std::vector<Crossing> crossings;
};

WiringDiagram wiring_diagram(const DeconedArrangement& dec);

/// One generator per wire, one relator [w_j, w_b ... w_a] for each position
/// j < b in a crossing block a..b, where w_i are the words carried by the
/// wires. A crossing then turns the block upside down by adjacent swaps
/// (u, v) -> (v, v u v^-1).
struct GroupPresentation {
    int generators = 0;
    std::vector<Word> relators;
    std::size_t max_word_length = 0;
};

GroupPresentation randell_presentation(const WiringDiagram& wd, int wires);

/// Twisted chain complex C_2 -> C_1 -> C_0 of the presentation complex.
struct TwistedComplex {
    Matrix d2;  // relators x generators: rho(d r / d x_j)
    Matrix d1;  // generators x 1: rho(x_j) - 1
    bool boundary_squared_zero = false;
};

/// Evaluates Fox derivatives under the abelian representation x_j -> m(l_j).
TwistedComplex twisted_complex(const GroupPresentation& gp, const LocalSystem& ls);

/// dim ker d1 - rank d2, with the complex built after deconing `line`.
std::size_t oracle_h1(const Arrangement& arr, const LocalSystem& ls, int line = 0,
                      std::uint64_t seed = 1);

}  // namespace arrhom

#endif
