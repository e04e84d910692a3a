#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "montrep/mat2.hpp"
#include "montrep/rational.hpp"

namespace montrep {

// ---------------------------------------------------------------------------
// tangle expressions

enum class BasicTangle { zero, infinity, one, minus_one };

struct TangleExpr;
using TangleExprPtr = std::unique_ptr<TangleExpr>;

struct TangleExpr {
  enum class Kind { leaf, horizontal, vertical } kind = Kind::leaf;
  BasicTangle leaf = BasicTangle::zero;
  // desugared twist groups keep their digits for reporting
  TangleExprPtr lhs, rhs;

  static TangleExprPtr make_leaf(BasicTangle b);
  static TangleExprPtr compose(TangleExpr::Kind k, TangleExprPtr l, TangleExprPtr r);
};

// Horizontal twists [k] and vertical twists [1/k] as expression trees.
TangleExprPtr twist_expr(i64 k, bool horizontal);
// Left-associated alternating composite of a rational expansion.
TangleExprPtr rational_expr(const ContinuedFraction& ks);

int leaf_count(const TangleExpr& e);

// ---------------------------------------------------------------------------
// concrete syntax
//
// input  := montesinos | expr
// montesinos := "M(" frac ("," frac)* ")"
// frac   := int ["/" int]
// expr   := term (("*" | "|") term)*         left-assoc, equal precedence
// term   := "(" expr ")" | basic
// basic  := "[" int "]" | "[" int "/" int "]" | "[[" int ("," int)* "]]"
//
// "[1/0]" is the infinity tangle, "[0]" the zero tangle.

struct ParsedMontesinos {
  std::vector<Fraction> fractions;  // as written, reduced
  std::string text;
};

struct ParsedTangle {
  TangleExprPtr expr;
  // set when the input is a single rational form [k], [1/k] or [[ks]]
  std::optional<ContinuedFraction> rational_ks;
  std::optional<Fraction> fraction;
};

using ParseResult = std::variant<ParsedMontesinos, ParsedTangle>;

ParseResult parse_tangle(const std::string& text);

// ---------------------------------------------------------------------------
// crossing-level diagrams
//
// A crossing has four ports at slots NW, NE, SW, SE.  One diagonal passes
// over (NW-SE when over_nwse, SW-NE otherwise); the other strand enters and
// leaves underneath.  Wires splice ports of different crossings together.
// Arcs are maximal strand pieces; they terminate at under-ports and at open
// boundary ports.  Closure joins pair leftover open ports; the two outward
// directed ends of a join carry mutually inverse (hence opposite) matrices.

struct Diagram {
  static constexpr int NW = 0, NE = 1, SW = 2, SE = 3;

  struct Crossing {
    bool over_nwse = true;
  };

  struct TanglePart {
    int first_crossing = 0, num_crossings = 0;
    std::array<int, 4> end = {-1, -1, -1, -1};  // ports, indexed by NW..SE
    int x_port = -1;  // generating pair anchors, outward convention
    int y_port = -1;
  };

  struct Arc {
    std::vector<int> ports;  // canonical direction = path order
  };

  struct CrossingArcs {
    int over_arc = -1;
    int in_arc = -1, out_arc = -1;
    int in_flag = 1, out_flag = 1;  // canonical direction vs the crossing rule
    int in_port = -1, out_port = -1;
  };

  std::vector<Crossing> crossings;
  std::vector<int> wire;                          // port -> port or -1
  std::vector<std::pair<int, int>> closure_joins;  // open ports
  std::vector<TanglePart> parts;

  // derived by finalize()
  std::vector<Arc> arcs;
  std::vector<int> arc_of;      // port -> arc
  std::vector<int> pos_in_arc;  // port -> index in the arc path
  std::vector<CrossingArcs> cross_arcs;

  int num_ports() const { return 4 * int(crossings.size()); }
  int port(int crossing, int slot) const { return 4 * crossing + slot; }
  int pass_partner(int p) const;  // other port of the over diagonal, -1 for under ports
  bool is_under_port(int p) const;

  void finalize();

  // +1 when the canonical arc direction leaves the crossing through the wire
  // or boundary at this port, -1 otherwise.
  int outward_flag(int p) const;
};

// Twist region: |k| crossings in a row (horizontal) or a column (vertical),
// positive k crossing over along the NW-SE diagonal.
Diagram build_twist_diagram(i64 k, bool horizontal);

// Rational tangle in the standard alternating composition order; part 0
// carries the generating-pair anchors (X at the tangle's NW end, Y at the
// first twist block's SW port, both directed outward).
Diagram build_rational_diagram(const ContinuedFraction& ks);

// Vertical stack of rational tangles: bottom ends wired to the next tangle's
// top ends, composite NW-SW and NE-SE pairs recorded as closure joins.
Diagram build_montesinos_diagram(const std::vector<TangleData>& tangles);

// Diagram for a general expression; only crossing-built leaves are supported.
Diagram build_expr_diagram(const TangleExpr& e);

// ---------------------------------------------------------------------------
// representations on diagrams

struct RepAssignment {
  std::vector<std::optional<Mat2>> arc_value;  // canonical direction

  const Mat2& at(int arc) const;
  bool labeled(int arc) const { return arc_value[size_t(arc)].has_value(); }
};

struct Seed {
  int port = -1;
  Mat2 value;  // outward-directed matrix at the port
};

// Sweep the crossing rule rho(out) = rho(over) rho(in) rho(over)^{-1} from the
// seeds until every arc touched by [c0, c1) is labeled.
void propagate_range(const Diagram& d, int c0, int c1, RepAssignment& asg);
RepAssignment propagate(const Diagram& d, const std::vector<Seed>& seeds);

// Per-part propagation from each tangle's generating pair; on arcs shared
// between neighbouring parts the lower part index wins, so any inconsistency
// shows up as crossing residuals downstream.
RepAssignment assign_montesinos(const Diagram& d, const std::vector<Mat2>& X,
                                const std::vector<Mat2>& Y);

// Outward-directed matrix at a part's end.
Mat2 end_value(const Diagram& d, const RepAssignment& asg, int part, int slot);

// ---------------------------------------------------------------------------
// closed-form end matrices
//
// With nw = X, -tr(XY) = s + 1/s and the tangle's (p, q, pt, qt):
//   ne = (-1)^pt ({1+p} X + {-p} Y)
//   sw = (-1)^qt ({1-q} X + {q} Y)
//   se = (-1)^(pt+qt) ({1+p-q} X + {q-p} Y)
// valid for arbitrary tracefree X, Y.

struct TangleEnds {
  Mat2 nw, ne, sw, se;
};

TangleEnds ends_closed_form(const TangleData& td, const Mat2& X, const Mat2& Y, cplx s,
                            double trace_tol = 1e-6);

// Scalar 2x2 transfer T with (sw, se) = -(nw, ne) . T, defined when {p}_s != 0:
// T = (-1)^(qt-1)/{p}_s [ {p+q}   (-1)^pt {q} ; -(-1)^pt {q}   {p-q} ].
Mat2 linear_transfer(const TangleData& td, cplx s, double tol = 1e-9);

}  // namespace montrep
