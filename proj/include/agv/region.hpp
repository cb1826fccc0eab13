#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "agv/polynomial.hpp"

namespace agv {

struct Interval {
  Rational lower;
  Rational upper;
  bool operator==(const Interval&) const = default;
};

// A region is a finite union of parts. A part is either a box (optionally cut by
// polynomial constraints `g >= 0`) or an explicit finite set of valuations.
class Region {
 public:
  struct Box {
    std::map<std::string, Interval> axes;
    std::vector<Polynomial> constraints;
    bool operator==(const Box&) const = default;
  };
  struct Finite {
    std::vector<Valuation> points;
    bool operator==(const Finite&) const = default;
  };
  using Part = std::variant<Box, Finite>;

  Region() = default;
  static Region box(std::map<std::string, Interval> axes, std::vector<Polynomial> constraints = {});
  static Region finite(std::vector<Valuation> points);
  static Region empty() { return finite({}); }
  static Region unite(const std::vector<Region>& parts);

  // Grammar: `box:p=[0,1/10],q=[0,1];where:q<=1-p`, `finite:{p=1/10};{p=9/10}`,
  // `empty`, and unions joined by `|`.
  static Region parse(std::string_view text);

  const std::vector<Part>& parts() const { return parts_; }
  bool is_empty() const;
  bool contains(const Valuation& v) const;

  // Box: per axis the endpoints plus `resolution` evenly spaced interior points,
  // filtered by the constraints. Finite: the points themselves. Deduplicated, sorted.
  std::vector<Valuation> samples(unsigned resolution) const;

  std::string to_string() const;
  bool operator==(const Region&) const = default;

 private:
  std::vector<Part> parts_;
};

Region intersect(const Region& a, const Region& b);

std::vector<Valuation> region_samples(const Region& r, unsigned resolution);

}  // namespace agv
