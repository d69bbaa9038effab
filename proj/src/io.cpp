#include "vdclab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vdclab/errors.hpp"

namespace vdclab::io {

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

json point_to_json(const LatticePoint& p) {
  json arr = json::array();
  for (int i = 0; i < p.dim; ++i) arr.push_back(p.c[i]);
  return arr;
}

LatticePoint point_from_json(const json& j) {
  if (j.is_number()) {
    LatticePoint p(j.get<std::int64_t>());
    return p;
  }
  if (!j.is_array() || j.empty() || j.size() > 3) {
    throw std::invalid_argument("lattice point must be a 1..3 element array");
  }
  LatticePoint p = LatticePoint::zero(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) p.c[i] = j[i].get<std::int64_t>();
  return p;
}

json box_to_json(const LatticeBox& b) {
  json lo = json::array(), hi = json::array();
  for (int i = 0; i < b.dim; ++i) {
    lo.push_back(b.lo[i]);
    hi.push_back(b.hi[i]);
  }
  return json{{"lo", lo}, {"hi", hi}};
}

LatticeBox box_from_json(const json& j) {
  const auto& lo = j.at("lo");
  const auto& hi = j.at("hi");
  if (lo.size() != hi.size() || lo.empty() || lo.size() > 3) {
    throw std::invalid_argument("box lo/hi must be 1..3 element arrays");
  }
  LatticeBox b;
  b.dim = static_cast<int>(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    b.lo[i] = lo[i].get<std::int64_t>();
    b.hi[i] = hi[i].get<std::int64_t>();
  }
  return b;
}

}  // namespace

json domain_to_json(const ValueDomain& d) {
  switch (d.kind) {
    case ValueDomain::Kind::Disc:
      return json{{"kind", "disc"}, {"radius", d.radius}};
    case ValueDomain::Kind::Circle:
      return json{{"kind", "circle"}};
    case ValueDomain::Kind::Interval:
      return json{{"kind", "interval"}, {"lo", d.lo}, {"hi", d.hi}};
    case ValueDomain::Kind::Finite: {
      json pts = json::array();
      for (const auto& p : d.points) pts.push_back(complex_to_json(p));
      return json{{"kind", "finite"}, {"points", pts}};
    }
  }
  return {};
}

ValueDomain domain_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "disc") return ValueDomain::disc(j.value("radius", 1.0));
  if (kind == "circle") return ValueDomain::circle();
  if (kind == "interval") return ValueDomain::interval(j.at("lo").get<double>(), j.at("hi").get<double>());
  if (kind == "finite") {
    std::vector<Complex> pts;
    for (const auto& p : j.at("points")) pts.push_back(complex_from_json(p));
    return ValueDomain::finite(std::move(pts));
  }
  throw std::invalid_argument("unknown domain kind: " + kind);
}

void window_to_csv(const SequenceWindow& w, std::ostream& os) {
  const LatticeBox& r = w.region();
  os << "# dim=" << r.dim;
  os << " lo=";
  for (int i = 0; i < r.dim; ++i) os << (i ? ":" : "") << r.lo[i];
  os << " hi=";
  for (int i = 0; i < r.dim; ++i) os << (i ? ":" : "") << r.hi[i];
  os << " domain=" << domain_to_json(w.domain()).dump() << "\n";
  os.precision(17);
  for (std::int64_t idx = 0; idx < r.volume(); ++idx) {
    const LatticePoint p = r.point_at(static_cast<std::size_t>(idx));
    for (int i = 0; i < r.dim; ++i) os << p.c[i] << ",";
    const Complex z = w.at(p);
    os << z.real() << "," << z.imag() << "\n";
  }
}

SequenceWindow window_from_csv(std::istream& is) {
  std::string line;
  bool have_header = false;
  LatticeBox region;
  ValueDomain domain = ValueDomain::disc();
  std::vector<std::pair<LatticePoint, Complex>> rows;
  int dim = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto dom_pos = line.find("domain=");
      const auto dim_pos = line.find("dim=");
      const auto lo_pos = line.find("lo=");
      const auto hi_pos = line.find("hi=");
      if (dom_pos != std::string::npos && dim_pos != std::string::npos && lo_pos != std::string::npos &&
          hi_pos != std::string::npos) {
        region.dim = std::stoi(line.substr(dim_pos + 4));
        dim = region.dim;
        const auto parse_axes = [&](std::size_t pos, std::array<std::int64_t, kMaxDim>& out) {
          std::string chunk = line.substr(pos);
          chunk = chunk.substr(0, chunk.find(' '));
          std::stringstream ss(chunk);
          std::string part;
          int axis = 0;
          while (std::getline(ss, part, ':') && axis < region.dim) {
            out[static_cast<std::size_t>(axis++)] = std::stoll(part);
          }
        };
        parse_axes(lo_pos + 3, region.lo);
        parse_axes(hi_pos + 3, region.hi);
        domain = domain_from_json(json::parse(line.substr(dom_pos + 7)));
        have_header = true;
      }
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    if (cells.size() < 3 || cells.size() > 5) {
      throw std::invalid_argument("window CSV rows need coords followed by re,im");
    }
    const int row_dim = static_cast<int>(cells.size()) - 2;
    if (dim == 0) dim = row_dim;
    if (row_dim != dim) throw std::invalid_argument("window CSV rows have inconsistent dimension");
    LatticePoint p = LatticePoint::zero(dim);
    for (int i = 0; i < dim; ++i) p.c[i] = static_cast<std::int64_t>(std::llround(cells[static_cast<std::size_t>(i)]));
    rows.emplace_back(p, Complex(cells[static_cast<std::size_t>(dim)], cells[static_cast<std::size_t>(dim) + 1]));
  }
  if (rows.empty()) throw std::invalid_argument("window CSV has no data rows");
  if (!have_header) {
    region.dim = dim;
    for (int i = 0; i < dim; ++i) {
      region.lo[i] = rows.front().first.c[i];
      region.hi[i] = rows.front().first.c[i] + 1;
    }
    bool unimodular = true;
    for (const auto& [p, z] : rows) {
      for (int i = 0; i < dim; ++i) {
        region.lo[i] = std::min(region.lo[i], p.c[i]);
        region.hi[i] = std::max(region.hi[i], p.c[i] + 1);
      }
      if (std::abs(std::abs(z) - 1.0) > 1e-9) unimodular = false;
    }
    double radius = 1.0;
    for (const auto& [p, z] : rows) radius = std::max(radius, std::abs(z));
    domain = unimodular ? ValueDomain::circle() : ValueDomain::disc(radius);
  }
  SequenceWindow w(region, domain, domain.representative());
  std::vector<bool> seen(static_cast<std::size_t>(region.volume()), false);
  for (const auto& [p, z] : rows) {
    if (!region.contains(p)) throw CoverageError("window CSV row outside the declared region");
    seen[region.index_of(p)] = true;
    w.set(p, z);
  }
  for (const auto s : seen) {
    if (!s) throw CoverageError("window CSV leaves part of the region unassigned");
  }
  w.validate_domain(1e-9);
  return w;
}

json window_to_json(const SequenceWindow& w) {
  json values = json::array();
  for (const auto& z : w.values()) values.push_back(complex_to_json(z));
  json j = box_to_json(w.region());
  j["domain"] = domain_to_json(w.domain());
  j["values"] = values;
  return j;
}

SequenceWindow window_from_json(const json& j) {
  const LatticeBox region = box_from_json(j);
  const ValueDomain domain = domain_from_json(j.at("domain"));
  std::vector<Complex> values;
  for (const auto& v : j.at("values")) values.push_back(complex_from_json(v));
  SequenceWindow w(region, domain, std::move(values));
  w.validate_domain(1e-9);
  return w;
}

json set_to_json(const FiniteLatticeSet& s) {
  json arr = json::array();
  for (const auto& p : s.points()) arr.push_back(point_to_json(p));
  return arr;
}

FiniteLatticeSet set_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("point set JSON must be an array");
  std::vector<LatticePoint> pts;
  for (const auto& p : j) pts.push_back(point_from_json(p));
  if (pts.empty()) return FiniteLatticeSet(1);
  const int dim = pts.front().dim;
  return FiniteLatticeSet(std::move(pts), dim);
}

FiniteLatticeSet set_from_csv(std::istream& is) {
  std::string line;
  std::vector<LatticePoint> pts;
  int dim = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::int64_t> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stoll(cell));
    if (cells.empty() || cells.size() > 3) throw std::invalid_argument("point CSV rows need 1..3 coordinates");
    if (dim == 0) dim = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != dim) {
      throw std::invalid_argument("point CSV rows have inconsistent dimension");
    }
    LatticePoint p = LatticePoint::zero(dim);
    for (int i = 0; i < dim; ++i) p.c[i] = cells[static_cast<std::size_t>(i)];
    pts.push_back(p);
  }
  if (pts.empty()) return FiniteLatticeSet(1);
  return FiniteLatticeSet(std::move(pts), dim);
}

json spec_to_json(const CorrelationSpec& spec) {
  json entries = json::array();
  for (const auto& e : spec.entries) {
    json shifts = json::array();
    for (const auto& h : e.shifts) shifts.push_back(point_to_json(h));
    json terms = json::array();
    for (const auto& t : e.poly.terms) {
      json exps = json::array();
      for (const auto& [a, b] : t.exponents) exps.push_back(json::array({a, b}));
      terms.push_back(json{{"c", complex_to_json(t.coeff)}, {"exps", exps}});
    }
    json entry{{"shifts", shifts},
               {"poly", json{{"terms", terms}, {"sup", e.poly.sup_bound}}}};
    if (e.target) entry["target"] = complex_to_json(*e.target);
    if (e.distinct_shifts) entry["distinct"] = true;
    entries.push_back(entry);
  }
  return json{{"domain", domain_to_json(spec.domain)}, {"entries", entries}};
}

CorrelationSpec spec_from_json(const json& j) {
  CorrelationSpec spec;
  if (j.contains("domain")) spec.domain = domain_from_json(j.at("domain"));
  for (const auto& entry : j.at("entries")) {
    CorrelationEntry e;
    for (const auto& h : entry.at("shifts")) e.shifts.push_back(point_from_json(h));
    const auto& poly = entry.at("poly");
    e.poly.arity = static_cast<int>(e.shifts.size());
    for (const auto& t : poly.at("terms")) {
      StarPolynomial::Term term;
      term.coeff = complex_from_json(t.at("c"));
      for (const auto& ab : t.at("exps")) {
        term.exponents.emplace_back(ab.at(0).get<int>(), ab.at(1).get<int>());
      }
      e.poly.terms.push_back(std::move(term));
    }
    e.poly.sup_bound = poly.value("sup", 1.0);
    if (entry.contains("target")) e.target = complex_from_json(entry.at("target"));
    e.distinct_shifts = entry.value("distinct", false);
    e.validate();
    // Guard against understated bounds: the sampled sup is a lower bound for
    // the true sup norm.
    const double sampled = e.poly.sampled_sup(spec.domain);
    if (sampled > e.poly.sup_bound * (1.0 + 1e-9) + 1e-12) {
      throw std::invalid_argument("entry sup bound is below the sampled sup of its polynomial");
    }
    spec.entries.push_back(std::move(e));
  }
  spec.validate();
  return spec;
}

json mps_to_json(const FiniteMps& m) {
  json weights = json::array();
  for (const auto w : m.weights()) weights.push_back(w);
  json gens = json::array();
  for (int axis = 0; axis < m.dim(); ++axis) {
    json g = json::array();
    for (const auto i : m.generator(axis)) g.push_back(i);
    gens.push_back(g);
  }
  json f = json::array();
  for (const auto& z : m.observable()) f.push_back(complex_to_json(z));
  return json{{"weights", weights}, {"generators", gens}, {"observable", f}, {"bound", m.bound()}};
}

FiniteMps mps_from_json(const json& j) {
  std::vector<double> weights;
  for (const auto& w : j.at("weights")) weights.push_back(w.get<double>());
  std::vector<std::vector<std::size_t>> gens;
  for (const auto& g : j.at("generators")) {
    std::vector<std::size_t> perm;
    for (const auto& i : g) perm.push_back(i.get<std::size_t>());
    gens.push_back(std::move(perm));
  }
  std::vector<Complex> f;
  for (const auto& z : j.at("observable")) f.push_back(complex_from_json(z));
  double bound = j.value("bound", 0.0);
  if (bound == 0.0) {
    for (const auto& z : f) bound = std::max(bound, std::abs(z));
    bound = std::max(bound, 1.0);
  }
  return FiniteMps(std::move(weights), std::move(gens), std::move(f), bound);
}

json weyl_report_to_json(const WeylReport& r) {
  return json{{"statistic", "weyl-power-sums"},
              {"pass", r.pass},
              {"worst_l", r.worst_l},
              {"worst_value", r.worst_value},
              {"tol", r.tol},
              {"values", r.values}};
}

json synthesis_report_to_json(const SynthesisResult& r) {
  json levels = json::array();
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    levels.push_back(json{{"k", r.levels[i].k},
                          {"inner_k", r.levels[i].inner_k},
                          {"delta", r.levels[i].delta},
                          {"achieved", r.levels[i].achieved},
                          {"tiles", i < r.tiles_per_level.size() ? r.tiles_per_level[i] : 0}});
  }
  json trace = json::array();
  for (const auto& row : r.trace) {
    trace.push_back(json{{"N", row.n},
                         {"entry", row.entry},
                         {"value_re", row.value.real()},
                         {"value_im", row.value.imag()},
                         {"target_re", row.target.real()},
                         {"target_im", row.target.imag()},
                         {"abs_err", row.abs_err}});
  }
  return json{{"levels", levels},
              {"trace", trace},
              {"final_max_err", r.final_max_err},
              {"composed_bound", r.composed_bound},
              {"pass", r.passed}};
}

json ifc_report_to_json(const IfcResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"family", row.family},
                        {"measured", row.measured},
                        {"target", row.target},
                        {"abs_err", row.abs_err}});
  }
  return json{{"families", rows},
              {"worst_err", r.worst_err},
              {"set_size", r.a.size()},
              {"synthesis", synthesis_report_to_json(r.synthesis)}};
}

json evidence_report_to_json(const EvidenceReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    steps.push_back(json{{"h0_size", s.h0_size},
                         {"M", s.resolution},
                         {"primal", s.primal_value},
                         {"dual", s.dual_value},
                         {"gap", s.gap}});
  }
  return json{{"H", r.h_description},
              {"steps", steps},
              {"verdict", verdict_name(r.verdict)},
              {"threshold", r.threshold},
              {"floor", r.floor}};
}

json certificate_to_json(const CosineCertificate& c) {
  json support = json::array();
  for (const auto& h : c.support) support.push_back(point_to_json(h));
  return json{{"support", support},
              {"a", c.a},
              {"b", c.b},
              {"eps", c.eps},
              {"resolution", c.resolution},
              {"dual_value", c.dual_value}};
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open file: " + path);
  json j;
  f >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open file for writing: " + path);
  f << text;
}

}  // namespace vdclab::io
