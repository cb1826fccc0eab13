#include "agv/region.hpp"

#include <algorithm>
#include <cctype>

#include "agv/errors.hpp"

namespace agv {

namespace {

bool box_contains(const Region::Box& box, const Valuation& v) {
  for (const auto& [name, iv] : box.axes) {
    auto it = v.find(name);
    if (it == v.end() || it->second < iv.lower || it->second > iv.upper) return false;
  }
  for (const auto& g : box.constraints) {
    for (const auto& name : g.parameters())
      if (!v.count(name)) return false;
    if (g.eval(v) < 0) return false;
  }
  return true;
}

std::vector<Rational> axis_points(const Interval& iv, unsigned resolution) {
  std::vector<Rational> pts{iv.lower};
  if (iv.lower == iv.upper) return pts;
  Rational step = (iv.upper - iv.lower) / Rational(resolution + 1);
  for (unsigned i = 1; i <= resolution; ++i) pts.push_back(iv.lower + step * i);
  pts.push_back(iv.upper);
  return pts;
}

void box_grid(const Region::Box& box, unsigned resolution, std::vector<Valuation>& out) {
  std::vector<std::pair<std::string, std::vector<Rational>>> axes;
  for (const auto& [name, iv] : box.axes) axes.emplace_back(name, axis_points(iv, resolution));
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    Valuation v;
    for (std::size_t i = 0; i < axes.size(); ++i) v[axes[i].first] = axes[i].second[idx[i]];
    if (box_contains(box, v)) out.push_back(std::move(v));
    std::size_t k = 0;
    while (k < axes.size() && ++idx[k] == axes[k].second.size()) idx[k++] = 0;
    if (k == axes.size()) break;
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits on `sep` outside brackets and braces.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '[' || c == '{' || c == '(') ++depth;
    if (c == ']' || c == '}' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

Valuation parse_assignment_list(std::string_view body) {
  Valuation v;
  std::string inner = trim(body);
  if (inner.size() >= 2 && inner.front() == '{' && inner.back() == '}') inner = inner.substr(1, inner.size() - 2);
  if (trim(inner).empty()) return v;
  for (const auto& item : split_top(inner, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseFailure("expected name=value in '" + item + "'", 0);
    v[trim(item.substr(0, eq))] = parse_rational(item.substr(eq + 1));
  }
  return v;
}

Polynomial parse_constraint(const std::string& text) {
  auto le = text.find("<=");
  auto ge = text.find(">=");
  if (le != std::string::npos) {
    return Polynomial::parse(text.substr(le + 2)) - Polynomial::parse(text.substr(0, le));
  }
  if (ge != std::string::npos) {
    return Polynomial::parse(text.substr(0, ge)) - Polynomial::parse(text.substr(ge + 2));
  }
  throw ParseFailure("constraint needs <= or >=: '" + text + "'", 0);
}

Region parse_single(std::string_view text) {
  std::string s = trim(text);
  if (s == "empty") return Region::empty();
  auto colon = s.find_first_of(":.");
  if (colon == std::string::npos) throw ParseFailure("region needs a kind prefix (box: or finite:)", 0);
  std::string kind = s.substr(0, colon);
  std::string body = s.substr(colon + 1);
  if (kind == "box") {
    std::map<std::string, Interval> axes;
    std::vector<Polynomial> constraints;
    auto sections = split_top(body, ';');
    for (std::size_t k = 0; k < sections.size(); ++k) {
      const std::string& sec = sections[k];
      if (sec.rfind("where:", 0) == 0) {
        for (const auto& c : split_top(sec.substr(6), ',')) constraints.push_back(parse_constraint(c));
        continue;
      }
      if (k > 0) throw ParseFailure("unexpected box section '" + sec + "'", 0);
      if (sec.empty()) continue;
      for (const auto& item : split_top(sec, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseFailure("expected name=[lo,hi] in '" + item + "'", 0);
        std::string range = trim(item.substr(eq + 1));
        if (range.size() < 2 || range.front() != '[' || range.back() != ']')
          throw ParseFailure("expected [lo,hi] in '" + item + "'", 0);
        auto bounds = split_top(range.substr(1, range.size() - 2), ',');
        if (bounds.size() != 2) throw ParseFailure("expected two bounds in '" + item + "'", 0);
        Interval iv{parse_rational(bounds[0]), parse_rational(bounds[1])};
        if (iv.lower > iv.upper) throw ParseFailure("empty interval in '" + item + "'", 0);
        axes[trim(item.substr(0, eq))] = iv;
      }
    }
    return Region::box(std::move(axes), std::move(constraints));
  }
  if (kind == "finite") {
    std::vector<Valuation> pts;
    if (!trim(body).empty())
      for (const auto& item : split_top(body, ';')) pts.push_back(parse_assignment_list(item));
    return Region::finite(std::move(pts));
  }
  throw ParseFailure("unknown region kind '" + kind + "'", 0);
}

}  // namespace

Region Region::box(std::map<std::string, Interval> axes, std::vector<Polynomial> constraints) {
  for (const auto& [name, iv] : axes)
    if (iv.lower > iv.upper) fail(ErrorKind::InvalidArgument, "box axis '" + name + "' has lower > upper");
  Region r;
  r.parts_.push_back(Box{std::move(axes), std::move(constraints)});
  return r;
}

Region Region::finite(std::vector<Valuation> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Region r;
  r.parts_.push_back(Finite{std::move(points)});
  return r;
}

Region Region::unite(const std::vector<Region>& parts) {
  Region r;
  for (const auto& p : parts)
    for (const auto& part : p.parts_) r.parts_.push_back(part);
  return r;
}

Region Region::parse(std::string_view text) {
  auto pieces = split_top(text, '|');
  if (pieces.size() == 1) return parse_single(pieces[0]);
  std::vector<Region> rs;
  for (const auto& p : pieces) rs.push_back(parse_single(p));
  return unite(rs);
}

bool Region::is_empty() const {
  for (const auto& part : parts_) {
    if (std::holds_alternative<Box>(part)) return false;
    if (!std::get<Finite>(part).points.empty()) return false;
  }
  return true;
}

bool Region::contains(const Valuation& v) const {
  for (const auto& part : parts_) {
    if (const auto* b = std::get_if<Box>(&part)) {
      if (box_contains(*b, v)) return true;
    } else {
      const auto& pts = std::get<Finite>(part).points;
      if (std::binary_search(pts.begin(), pts.end(), v)) return true;
    }
  }
  return false;
}

std::vector<Valuation> Region::samples(unsigned resolution) const {
  if (resolution < 1) fail(ErrorKind::InvalidArgument, "resolution must be >= 1");
  if (is_empty()) fail(ErrorKind::EmptyRegion, "region " + to_string() + " denotes no valuation");
  std::vector<Valuation> out;
  for (const auto& part : parts_) {
    if (const auto* b = std::get_if<Box>(&part)) {
      box_grid(*b, resolution, out);
    } else {
      const auto& pts = std::get<Finite>(part).points;
      out.insert(out.end(), pts.begin(), pts.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) fail(ErrorKind::EmptyRegion, "no grid point of " + to_string() + " satisfies its constraints");
  return out;
}

std::string Region::to_string() const {
  if (is_empty()) return "empty";
  std::string out;
  for (const auto& part : parts_) {
    if (!out.empty()) out += " | ";
    if (const auto* b = std::get_if<Box>(&part)) {
      out += "box:";
      bool first = true;
      for (const auto& [name, iv] : b->axes) {
        if (!first) out += ",";
        first = false;
        out += name + "=[" + agv::to_string(iv.lower) + "," + agv::to_string(iv.upper) + "]";
      }
      if (!b->constraints.empty()) {
        out += ";where:";
        for (std::size_t i = 0; i < b->constraints.size(); ++i) {
          if (i) out += ",";
          out += b->constraints[i].to_string() + ">=0";
        }
      }
    } else {
      const auto& pts = std::get<Finite>(part).points;
      if (pts.empty()) continue;
      out += "finite:";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ";";
        out += "{";
        bool first = true;
        for (const auto& [name, val] : pts[i]) {
          if (!first) out += ",";
          first = false;
          out += name + "=" + agv::to_string(val);
        }
        out += "}";
      }
    }
  }
  return out.empty() ? "empty" : out;
}

namespace {

bool covers(const Region::Box& outer, const Region::Box& inner) {
  if (!outer.constraints.empty() || outer.axes.size() != inner.axes.size()) return false;
  for (const auto& [name, iv] : outer.axes) {
    auto it = inner.axes.find(name);
    if (it == inner.axes.end() || it->second.lower < iv.lower || it->second.upper > iv.upper) return false;
  }
  return true;
}

// Drops empty finite parts and boxes covered by an unconstrained box.
Region simplify(const Region& r) {
  const auto& parts = r.parts();
  std::vector<Region> kept;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    bool drop = false;
    if (const auto* f = std::get_if<Region::Finite>(&parts[i])) {
      drop = f->points.empty() && parts.size() > 1;
    } else {
      const auto& bi = std::get<Region::Box>(parts[i]);
      for (std::size_t j = 0; j < parts.size() && !drop; ++j) {
        const auto* bj = std::get_if<Region::Box>(&parts[j]);
        if (j == i || !bj || !covers(*bj, bi)) continue;
        drop = !(covers(bi, *bj)) || j < i;
      }
    }
    if (drop) continue;
    if (const auto* b = std::get_if<Region::Box>(&parts[i])) kept.push_back(Region::box(b->axes, b->constraints));
    else kept.push_back(Region::finite(std::get<Region::Finite>(parts[i]).points));
  }
  if (kept.empty()) return Region::empty();
  return Region::unite(kept);
}

}  // namespace

Region intersect(const Region& a, const Region& b) {
  std::vector<Region> pieces;
  for (const auto& pa : a.parts()) {
    for (const auto& pb : b.parts()) {
      const auto* ba = std::get_if<Region::Box>(&pa);
      const auto* bb = std::get_if<Region::Box>(&pb);
      if (ba && bb) {
        auto axes = ba->axes;
        bool empty = false;
        for (const auto& [name, iv] : bb->axes) {
          auto it = axes.find(name);
          if (it == axes.end()) {
            axes[name] = iv;
          } else {
            it->second.lower = std::max(it->second.lower, iv.lower);
            it->second.upper = std::min(it->second.upper, iv.upper);
            if (it->second.lower > it->second.upper) empty = true;
          }
        }
        if (empty) continue;
        auto cons = ba->constraints;
        cons.insert(cons.end(), bb->constraints.begin(), bb->constraints.end());
        pieces.push_back(Region::box(std::move(axes), std::move(cons)));
      } else if (ba || bb) {
        const auto& box = ba ? *ba : *bb;
        const auto& pts = std::get<Region::Finite>(ba ? pb : pa).points;
        std::vector<Valuation> kept;
        for (const auto& v : pts)
          if (box_contains(box, v)) kept.push_back(v);
        pieces.push_back(Region::finite(std::move(kept)));
      } else {
        const auto& pa_pts = std::get<Region::Finite>(pa).points;
        const auto& pb_pts = std::get<Region::Finite>(pb).points;
        std::vector<Valuation> kept;
        std::set_intersection(pa_pts.begin(), pa_pts.end(), pb_pts.begin(), pb_pts.end(), std::back_inserter(kept));
        pieces.push_back(Region::finite(std::move(kept)));
      }
    }
  }
  if (pieces.empty()) return Region::empty();
  return simplify(Region::unite(pieces));
}

std::vector<Valuation> region_samples(const Region& r, unsigned resolution) { return r.samples(resolution); }

}  // namespace agv
