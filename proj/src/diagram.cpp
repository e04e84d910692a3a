#include <algorithm>

#include "montrep/tangle.hpp"

namespace montrep {

int Diagram::pass_partner(int p) const {
  int c = p / 4, slot = p % 4;
  if (crossings[size_t(c)].over_nwse) {
    if (slot == NW) return port(c, SE);
    if (slot == SE) return port(c, NW);
  } else {
    if (slot == SW) return port(c, NE);
    if (slot == NE) return port(c, SW);
  }
  return -1;
}

bool Diagram::is_under_port(int p) const { return pass_partner(p) < 0; }

void Diagram::finalize() {
  int P = num_ports();
  arcs.clear();
  arc_of.assign(size_t(P), -1);
  pos_in_arc.assign(size_t(P), -1);

  auto degree = [&](int p) { return int(wire[size_t(p)] >= 0) + int(pass_partner(p) >= 0); };

  auto walk_from = [&](int start, bool allow_cycle) {
    Arc a;
    a.ports.push_back(start);
    int nxt = -1;
    bool via_pass = false;
    if (pass_partner(start) >= 0) {
      nxt = pass_partner(start);
      via_pass = true;
    } else if (wire[size_t(start)] >= 0) {
      nxt = wire[size_t(start)];
      via_pass = false;
    }
    while (nxt >= 0) {
      if (allow_cycle && nxt == start) break;
      a.ports.push_back(nxt);
      int cont = via_pass ? wire[size_t(nxt)] : pass_partner(nxt);
      via_pass = !via_pass;
      nxt = cont;
    }
    return a;
  };

  auto register_arc = [&](Arc&& a) {
    int id = int(arcs.size());
    for (size_t i = 0; i < a.ports.size(); ++i) {
      arc_of[size_t(a.ports[i])] = id;
      pos_in_arc[size_t(a.ports[i])] = int(i);
    }
    arcs.push_back(std::move(a));
  };

  for (int p = 0; p < P; ++p)
    if (arc_of[size_t(p)] < 0 && degree(p) <= 1) register_arc(walk_from(p, false));
  for (int p = 0; p < P; ++p)
    if (arc_of[size_t(p)] < 0) register_arc(walk_from(p, true));  // leftover closed loops

  cross_arcs.assign(crossings.size(), CrossingArcs());
  for (int c = 0; c < int(crossings.size()); ++c) {
    bool nwse = crossings[size_t(c)].over_nwse;
    CrossingArcs ca;
    ca.over_arc = arc_of[size_t(port(c, nwse ? NW : SW))];
    ca.in_port = port(c, nwse ? SW : NW);
    ca.out_port = port(c, nwse ? NE : SE);
    ca.in_arc = arc_of[size_t(ca.in_port)];
    ca.out_arc = arc_of[size_t(ca.out_port)];
    const Arc& ia = arcs[size_t(ca.in_arc)];
    const Arc& oa = arcs[size_t(ca.out_arc)];
    ca.in_flag = (ia.ports.size() == 1) ? 1 : (ca.in_port == ia.ports.back() ? 1 : -1);
    ca.out_flag = (oa.ports.size() == 1) ? -1 : (ca.out_port == oa.ports.front() ? 1 : -1);
    cross_arcs[size_t(c)] = ca;
  }
}

int Diagram::outward_flag(int p) const {
  const Arc& a = arcs[size_t(arc_of[size_t(p)])];
  if (a.ports.size() == 1) return -1;
  int i = pos_in_arc[size_t(p)];
  if (i > 0) return a.ports[size_t(i - 1)] == pass_partner(p) ? 1 : -1;
  return a.ports[1] == wire[size_t(p)] ? 1 : -1;
}

// ---------------------------------------------------------------------------
// construction

namespace {

void add_wire(Diagram& d, int a, int b) {
  d.wire[size_t(a)] = b;
  d.wire[size_t(b)] = a;
}

std::array<int, 4> append_twist_block(Diagram& d, i64 k, bool horizontal) {
  if (k == 0) fail(Errc::invalid_parameter, "twist count must be nonzero");
  int n = int(k > 0 ? k : -k);
  bool nwse = k > 0;
  int first = int(d.crossings.size());
  for (int i = 0; i < n; ++i) d.crossings.push_back({nwse});
  d.wire.resize(4 * d.crossings.size(), -1);
  for (int i = 0; i + 1 < n; ++i) {
    int c = first + i;
    if (horizontal) {
      add_wire(d, d.port(c, Diagram::NE), d.port(c + 1, Diagram::NW));
      add_wire(d, d.port(c, Diagram::SE), d.port(c + 1, Diagram::SW));
    } else {
      add_wire(d, d.port(c, Diagram::SW), d.port(c + 1, Diagram::NW));
      add_wire(d, d.port(c, Diagram::SE), d.port(c + 1, Diagram::NE));
    }
  }
  int last = first + n - 1;
  std::array<int, 4> end;
  end[Diagram::NW] = d.port(first, Diagram::NW);
  end[Diagram::SW] = horizontal ? d.port(first, Diagram::SW) : d.port(last, Diagram::SW);
  end[Diagram::NE] = horizontal ? d.port(last, Diagram::NE) : d.port(first, Diagram::NE);
  end[Diagram::SE] = d.port(last, Diagram::SE);
  return end;
}

Diagram::TanglePart append_rational(Diagram& d, const ContinuedFraction& ks) {
  if (ks.empty()) fail(Errc::invalid_fraction, "empty expansion");
  Diagram::TanglePart part;
  part.first_crossing = int(d.crossings.size());
  std::array<int, 4> cur = append_twist_block(d, ks[0], true);
  part.x_port = cur[Diagram::NW];
  part.y_port = cur[Diagram::SW];
  for (size_t j = 1; j < ks.size(); ++j) {
    if (j % 2 == 1) {  // vertical block glued below
      std::array<int, 4> blk = append_twist_block(d, ks[j], false);
      add_wire(d, cur[Diagram::SW], blk[Diagram::NW]);
      add_wire(d, cur[Diagram::SE], blk[Diagram::NE]);
      cur[Diagram::SW] = blk[Diagram::SW];
      cur[Diagram::SE] = blk[Diagram::SE];
    } else {  // horizontal block glued to the right
      std::array<int, 4> blk = append_twist_block(d, ks[j], true);
      add_wire(d, cur[Diagram::NE], blk[Diagram::NW]);
      add_wire(d, cur[Diagram::SE], blk[Diagram::SW]);
      cur[Diagram::NE] = blk[Diagram::NE];
      cur[Diagram::SE] = blk[Diagram::SE];
    }
  }
  part.end = cur;
  part.num_crossings = int(d.crossings.size()) - part.first_crossing;
  return part;
}

}  // namespace

Diagram build_twist_diagram(i64 k, bool horizontal) {
  Diagram d;
  Diagram::TanglePart part;
  part.first_crossing = 0;
  part.end = append_twist_block(d, k, horizontal);
  part.num_crossings = int(d.crossings.size());
  part.x_port = part.end[Diagram::NW];
  part.y_port = horizontal ? part.end[Diagram::SW] : part.end[Diagram::NE];
  d.parts.push_back(part);
  d.finalize();
  return d;
}

Diagram build_rational_diagram(const ContinuedFraction& ks) {
  Diagram d;
  d.parts.push_back(append_rational(d, ks));
  d.finalize();
  return d;
}

Diagram build_montesinos_diagram(const std::vector<TangleData>& tangles) {
  if (tangles.empty()) fail(Errc::invalid_parameter, "need at least one tangle");
  Diagram d;
  for (const TangleData& td : tangles) d.parts.push_back(append_rational(d, td.ks));
  int r = int(tangles.size());
  for (int l = 0; l + 1 < r; ++l) {
    add_wire(d, d.parts[size_t(l)].end[Diagram::SW], d.parts[size_t(l + 1)].end[Diagram::NW]);
    add_wire(d, d.parts[size_t(l)].end[Diagram::SE], d.parts[size_t(l + 1)].end[Diagram::NE]);
  }
  d.closure_joins.push_back({d.parts[0].end[Diagram::NW], d.parts[size_t(r - 1)].end[Diagram::SW]});
  d.closure_joins.push_back({d.parts[0].end[Diagram::NE], d.parts[size_t(r - 1)].end[Diagram::SE]});
  d.finalize();
  return d;
}

// ---------------------------------------------------------------------------
// general expressions (crossing leaves only; a bare strand can appear inside
// a composite as long as every final end rests on a crossing port)

namespace {

struct Stub {
  int port = -1;  // >= 0: backed by this port
  int peer = -1;  // strand stub: index of the other end of a bare strand
};

struct ExprBuilder {
  Diagram& d;
  std::vector<Stub> stubs;

  int port_stub(int p) {
    stubs.push_back({p, -1});
    return int(stubs.size()) - 1;
  }

  std::pair<int, int> strand_pair() {
    int a = int(stubs.size());
    stubs.push_back({-1, a + 1});
    stubs.push_back({-1, a});
    return {a, a + 1};
  }

  void connect(int a, int b) {
    if (stubs[size_t(a)].port >= 0 && stubs[size_t(b)].port >= 0) {
      add_wire(d, stubs[size_t(a)].port, stubs[size_t(b)].port);
    } else if (stubs[size_t(a)].port >= 0) {
      stubs[size_t(stubs[size_t(b)].peer)] = {stubs[size_t(a)].port, -1};
    } else if (stubs[size_t(b)].port >= 0) {
      stubs[size_t(stubs[size_t(a)].peer)] = {stubs[size_t(b)].port, -1};
    } else {
      if (stubs[size_t(a)].peer == b)
        fail(Errc::invalid_parameter, "composition closes a crossingless loop");
      int pa = stubs[size_t(a)].peer, pb = stubs[size_t(b)].peer;
      stubs[size_t(pa)].peer = pb;
      stubs[size_t(pb)].peer = pa;
    }
  }

  std::array<int, 4> build(const TangleExpr& e) {
    if (e.kind == TangleExpr::Kind::leaf) {
      switch (e.leaf) {
        case BasicTangle::one:
        case BasicTangle::minus_one: {
          int c = int(d.crossings.size());
          d.crossings.push_back({e.leaf == BasicTangle::one});
          d.wire.resize(4 * d.crossings.size(), -1);
          return {port_stub(d.port(c, Diagram::NW)), port_stub(d.port(c, Diagram::NE)),
                  port_stub(d.port(c, Diagram::SW)), port_stub(d.port(c, Diagram::SE))};
        }
        case BasicTangle::zero: {
          auto [a, b] = strand_pair();  // NW-NE
          auto [c2, d2] = strand_pair();  // SW-SE
          return {a, b, c2, d2};
        }
        case BasicTangle::infinity: {
          auto [a, b] = strand_pair();  // NW-SW
          auto [c2, d2] = strand_pair();  // NE-SE
          return {a, c2, b, d2};
        }
      }
      fail(Errc::internal, "unknown leaf");
    }
    std::array<int, 4> L = build(*e.lhs);
    std::array<int, 4> R = build(*e.rhs);
    if (e.kind == TangleExpr::Kind::horizontal) {
      connect(L[Diagram::NE], R[Diagram::NW]);
      connect(L[Diagram::SE], R[Diagram::SW]);
      return {L[Diagram::NW], R[Diagram::NE], L[Diagram::SW], R[Diagram::SE]};
    }
    connect(L[Diagram::SW], R[Diagram::NW]);
    connect(L[Diagram::SE], R[Diagram::NE]);
    return {L[Diagram::NW], L[Diagram::NE], R[Diagram::SW], R[Diagram::SE]};
  }
};

}  // namespace

Diagram build_expr_diagram(const TangleExpr& e) {
  Diagram d;
  ExprBuilder b{d, {}};
  std::array<int, 4> ends = b.build(e);
  Diagram::TanglePart part;
  part.first_crossing = 0;
  part.num_crossings = int(d.crossings.size());
  for (int s = 0; s < 4; ++s) {
    if (b.stubs[size_t(ends[size_t(s)])].port < 0)
      fail(Errc::invalid_parameter, "composite end is a bare strand; not representable");
    part.end[size_t(s)] = b.stubs[size_t(ends[size_t(s)])].port;
  }
  part.x_port = part.end[Diagram::NW];
  part.y_port = part.end[Diagram::SW];
  d.parts.push_back(part);
  d.finalize();
  return d;
}

// ---------------------------------------------------------------------------
// propagation

const Mat2& RepAssignment::at(int arc) const {
  const auto& v = arc_value[size_t(arc)];
  if (!v) fail(Errc::unlabeled_arc, "arc " + std::to_string(arc) + " is unlabeled");
  return *v;
}

void propagate_range(const Diagram& d, int c0, int c1, RepAssignment& asg) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (int c = c0; c < c1; ++c) {
      const auto& ca = d.cross_arcs[size_t(c)];
      auto& vO = asg.arc_value[size_t(ca.over_arc)];
      if (!vO) continue;
      auto& vA = asg.arc_value[size_t(ca.in_arc)];
      auto& vB = asg.arc_value[size_t(ca.out_arc)];
      Mat2 M = *vO;
      double f = double(ca.in_flag * ca.out_flag);
      if (vA && !vB) {
        vB = f * (M * (*vA) * M.inverse());
        progress = true;
      } else if (vB && !vA) {
        vA = f * (M.inverse() * (*vB) * M);
        progress = true;
      }
    }
  }
  for (int c = c0; c < c1; ++c) {
    const auto& ca = d.cross_arcs[size_t(c)];
    if (!asg.labeled(ca.over_arc) || !asg.labeled(ca.in_arc) || !asg.labeled(ca.out_arc))
      fail(Errc::propagation_order, "no propagation order labels every arc");
  }
}

RepAssignment propagate(const Diagram& d, const std::vector<Seed>& seeds) {
  RepAssignment asg;
  asg.arc_value.resize(d.arcs.size());
  for (const Seed& s : seeds)
    asg.arc_value[size_t(d.arc_of[size_t(s.port)])] = double(d.outward_flag(s.port)) * s.value;
  propagate_range(d, 0, int(d.crossings.size()), asg);
  for (size_t a = 0; a < d.arcs.size(); ++a)
    if (!asg.arc_value[a]) fail(Errc::propagation_order, "isolated arc left unlabeled");
  return asg;
}

RepAssignment assign_montesinos(const Diagram& d, const std::vector<Mat2>& X,
                                const std::vector<Mat2>& Y) {
  if (X.size() != d.parts.size() || Y.size() != d.parts.size())
    fail(Errc::invalid_parameter, "one generating pair per tangle required");
  RepAssignment global;
  global.arc_value.resize(d.arcs.size());
  for (size_t l = 0; l < d.parts.size(); ++l) {
    const auto& part = d.parts[l];
    RepAssignment local;
    local.arc_value.resize(d.arcs.size());
    local.arc_value[size_t(d.arc_of[size_t(part.x_port)])] =
        double(d.outward_flag(part.x_port)) * X[l];
    local.arc_value[size_t(d.arc_of[size_t(part.y_port)])] =
        double(d.outward_flag(part.y_port)) * Y[l];
    propagate_range(d, part.first_crossing, part.first_crossing + part.num_crossings, local);
    for (size_t a = 0; a < d.arcs.size(); ++a)
      if (local.arc_value[a] && !global.arc_value[a]) global.arc_value[a] = local.arc_value[a];
  }
  return global;
}

Mat2 end_value(const Diagram& d, const RepAssignment& asg, int part, int slot) {
  int p = d.parts[size_t(part)].end[size_t(slot)];
  return double(d.outward_flag(p)) * asg.at(d.arc_of[size_t(p)]);
}

}  // namespace montrep
