#include "dulac/certify.hpp"

#include <algorithm>
#include <future>
#include <optional>

#include "dulac/error.hpp"

namespace dulac {

std::string Certificate::outcome_name() const {
  if (std::holds_alternative<Positive>(outcome)) return "positive";
  if (std::holds_alternative<Violation>(outcome)) return "violation";
  return "inconclusive";
}

int Certificate::depth() const {
  if (const auto* p = std::get_if<Positive>(&outcome)) return p->max_depth_used;
  if (const auto* i = std::get_if<Inconclusive>(&outcome)) return i->depth_limit;
  return 0;
}

bool operator==(const Certificate& a, const Certificate& b) {
  if (!(a.carrier == b.carrier) || !(a.box == b.box) || a.outcome.index() != b.outcome.index()) return false;
  if (const auto* p = std::get_if<Positive>(&a.outcome)) {
    const auto& q = std::get<Positive>(b.outcome);
    return p->max_depth_used == q.max_depth_used && p->box_count == q.box_count;
  }
  if (const auto* v = std::get_if<Violation>(&a.outcome)) {
    const auto& w = std::get<Violation>(b.outcome);
    return v->x == w.x && v->y == w.y && v->value == w.value;
  }
  const auto& i = std::get<Inconclusive>(a.outcome);
  const auto& j = std::get<Inconclusive>(b.outcome);
  return i.depth_limit == j.depth_limit && i.undecided_boxes == j.undecided_boxes;
}

namespace {

struct NodeResult {
  std::optional<Violation> violation;
  long positive_leaves = 0;
  long undecided = 0;
  int max_depth_used = 0;
};

std::optional<Violation> corner_violation(const BernsteinPatch& patch) {
  const Box2& b = patch.box;
  const std::array<std::pair<int, int>, 4> corners{{{0, 0}, {patch.m, 0}, {0, patch.n}, {patch.m, patch.n}}};
  for (const auto& [k, l] : corners) {
    const Rat& v = patch.at(k, l);
    if (sgn(v) <= 0) return Violation{k == 0 ? b.x_min : b.x_max, l == 0 ? b.y_min : b.y_max, v};
  }
  return std::nullopt;
}

void absorb(NodeResult& acc, const NodeResult& child) {
  acc.positive_leaves += child.positive_leaves;
  acc.undecided += child.undecided;
  acc.max_depth_used = std::max(acc.max_depth_used, child.max_depth_used);
}

NodeResult explore(const BernsteinPatch& patch, int depth, int max_depth) {
  NodeResult r;
  r.max_depth_used = depth;
  if (auto v = corner_violation(patch)) {
    r.violation = std::move(v);
    return r;
  }
  if (patch.all_positive()) {
    r.positive_leaves = 1;
    return r;
  }
  if (depth >= max_depth) {
    r.undecided = 1;
    return r;
  }
  for (const auto& child : subdivide(patch)) {
    NodeResult c = explore(child, depth + 1, max_depth);
    if (c.violation) return c;
    absorb(r, c);
  }
  return r;
}

}  // namespace

Certificate certify_positive(const Poly& p, const Box2& box, int max_depth, bool parallel) {
  if (max_depth < 0) throw Error(ErrorKind::InvalidArgument, "max_depth must be >= 0");
  const BernsteinPatch root = bernstein_coefficients(p, box);

  NodeResult result;
  const bool split_root = parallel && max_depth > 0 && !corner_violation(root) && !root.all_positive();
  if (split_root) {
    auto children = subdivide(root);
    std::array<std::future<NodeResult>, 4> jobs;
    for (std::size_t i = 0; i < 4; ++i)
      jobs[i] = std::async(std::launch::async, [&children, i, max_depth] { return explore(children[i], 1, max_depth); });
    std::array<NodeResult, 4> parts;
    for (std::size_t i = 0; i < 4; ++i) parts[i] = jobs[i].get();
    result.max_depth_used = 0;
    for (const auto& c : parts) {
      if (c.violation) {
        result = c;
        break;
      }
      absorb(result, c);
    }
  } else {
    result = explore(root, 0, max_depth);
  }

  Certificate cert;
  cert.carrier = p;
  cert.box = box;
  if (result.violation)
    cert.outcome = *result.violation;
  else if (result.undecided > 0)
    cert.outcome = Inconclusive{max_depth, result.undecided};
  else
    cert.outcome = Positive{result.max_depth_used, result.positive_leaves};
  return cert;
}

Certificate merge_certificates(const Poly& carrier, const Box2& box, std::span<const Certificate> parts) {
  Certificate out;
  out.carrier = carrier;
  out.box = box;
  Positive pos;
  Inconclusive inc;
  bool inconclusive = false;
  for (const auto& c : parts) {
    if (const auto* v = std::get_if<Violation>(&c.outcome)) {
      out.outcome = *v;
      return out;
    }
    if (const auto* p = std::get_if<Positive>(&c.outcome)) {
      pos.max_depth_used = std::max(pos.max_depth_used, p->max_depth_used);
      pos.box_count += p->box_count;
    } else {
      const auto& i = std::get<Inconclusive>(c.outcome);
      inconclusive = true;
      inc.depth_limit = std::max(inc.depth_limit, i.depth_limit);
      inc.undecided_boxes += i.undecided_boxes;
    }
  }
  if (inconclusive)
    out.outcome = inc;
  else
    out.outcome = pos;
  return out;
}

const char* to_string(Conclusion c) {
  return c == Conclusion::NoPeriodicOrbitFullyContained ? "NoPeriodicOrbitFullyContained" : "NotCertified";
}

DulacCertificate certify_dulac(const VectorField& system, const Multiplier& B, const Box2& box, int max_depth) {
  DulacCertificate out;
  out.certificate = certify_positive(sign_carrier(B, system), box, max_depth);
  out.multiplier = B;
  out.system = system;
  out.conclusion = out.certificate.is_positive() ? Conclusion::NoPeriodicOrbitFullyContained : Conclusion::NotCertified;
  if (out.certificate.is_positive()) {
    out.notes.push_back(
        "no periodic orbit lies fully inside the open box " + to_string(box) +
        "; a periodic orbit forming the box boundary is not excluded");
  }
  return out;
}

DulacCertificate bendixson(const VectorField& system, const Box2& box, int max_depth) {
  return certify_dulac(system, Multiplier::polynomial(Poly(1)), box, max_depth);
}

}  // namespace dulac
