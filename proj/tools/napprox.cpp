// napprox — normalized Diophantine approximations over quadratic and cubic
// number fields: exact lattice/unit reports, certified approximation sets
// with an independent verification oracle, accumulation curves, and
// deterministic CSV/JSON/SVG output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "napprox/napprox.hpp"

using json = nlohmann::ordered_json;
using namespace napprox;

namespace {

// ---- parsing helpers ----

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ConfigError("empty rational");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // decimal literal -> exact rational
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), digits.c_str(), 10) != 0)
      throw ConfigError("bad rational: " + s);
    for (size_t i = 0; i < frac; ++i) r /= 10;
    r.canonicalize();
    return r;
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw ConfigError("bad rational: " + s);
  if (r.get_den() == 0) throw ConfigError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

std::vector<Int> parse_poly(const std::string& s) {
  std::vector<Int> poly;
  for (const std::string& t : split(s, ',')) {
    Rat r = parse_rat(t);
    if (!is_integer(r)) throw ConfigError("polynomial coefficients must be integers");
    poly.push_back(r.get_num());
  }
  if (poly.size() < 3 || poly.size() > 4)
    throw ConfigError("polynomial must have degree 2 or 3");
  return poly;
}

std::vector<std::vector<Rat>> parse_vectors(const std::string& s) {
  std::vector<std::vector<Rat>> out;
  for (const std::string& part : split(s, ';')) {
    std::vector<Rat> v;
    for (const std::string& t : split(part, ',')) v.push_back(parse_rat(t));
    out.push_back(std::move(v));
  }
  return out;
}

// ---- job configuration: JSON file + command-line override layer ----

struct Job {
  std::vector<Int> poly;
  bool have_root = false;
  Rat root_lo, root_hi;
  std::vector<std::vector<Rat>> basis;         // empty -> power basis
  Rat C = Rat(3);
  long qmax = 100;
  long prec = 96;
  double eta = 0;                              // 0 -> 1/d
  std::string out;                             // empty -> stdout
  std::string format = "";                     // per-command default
  bool verify = false;
  std::vector<std::vector<Rat>> assume_units;  // power-basis coordinates
  unsigned long long seed = 0;
  long level_max = 10;
  long height_cap = 8;
  long nmax = 10;
  long samples = 100;
  long probe_q = 1000;
  int dim = 2;
  double view_c = 3;
  bool curves = true;
  long unit_cap = 20;
  std::string source = "algebraic";            // plot input: algebraic | oracle
};

struct Flags {
  std::string config, poly, root, basis, C, out, format, assume_units, source;
  long qmax = 0, prec = 0, level_max = 0, height_cap = 0, nmax = 0, samples = 0,
       probe_q = 0, unit_cap = 0;
  double eta = 0, view_c = 0;
  int dim = 0;
  unsigned long long seed = 0;
  bool verify = false, no_curves = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON job file; flags override its entries");
  sub->add_option("--poly", f.poly,
                  "monic minimal polynomial, coefficients low-to-high (e.g. -2,0,0,1)");
  sub->add_option("--root", f.root,
                  "rational interval lo,hi isolating the selected real root "
                  "(default: the largest real root)");
  sub->add_option("--basis", f.basis,
                  "lattice basis: ';'-separated power-basis coordinate vectors "
                  "(default 1,alpha,...,alpha^d)");
  sub->add_option("--C", f.C, "window bound C > 0 (rational)");
  sub->add_option("--qmax", f.qmax, "maximal |q|");
  sub->add_option("--prec", f.prec, "base working precision in bits");
  sub->add_option("--eta", f.eta, "exploratory normalization exponent (scan only)");
  sub->add_option("--out", f.out, "output path (default stdout)");
  sub->add_option("--format", f.format, "output format: csv or json");
  sub->add_flag("--verify", f.verify, "cross-check against the independent oracle");
  sub->add_option("--assume-units", f.assume_units,
                  "';'-separated unit coordinate vectors, verified then trusted "
                  "for fundamentality");
  sub->add_option("--seed", f.seed, "RNG seed for probe sampling");
  sub->add_option("--level-max", f.level_max, "largest dilation level reported");
  sub->add_option("--height-cap", f.height_cap, "coordinate cap of the norm search");
  sub->add_option("--nmax", f.nmax, "largest norm level tested by the norms command");
  sub->add_option("--samples", f.samples, "probe sample count");
  sub->add_option("--Q", f.probe_q, "probe denominator bound");
  sub->add_option("--dim", f.dim, "probe dimension (1 or 2)");
  sub->add_option("--view-c", f.view_c, "plot view half-width");
  sub->add_flag("--no-curves", f.no_curves, "suppress curve overlays in plots");
  sub->add_option("--unit-cap", f.unit_cap, "fundamentality certification cap");
  sub->add_option("--source", f.source, "plot point source: algebraic or oracle");
}

Job build_job(const CLI::App* sub, const Flags& f) {
  Job j;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("cannot open config file " + f.config);
    json cfg = json::parse(in);
    if (cfg.contains("poly")) {
      j.poly.clear();
      for (const auto& c : cfg["poly"]) j.poly.push_back(Int(c.get<long>()));
    }
    if (cfg.contains("root")) {
      j.have_root = true;
      j.root_lo = parse_rat(cfg["root"][0].get<std::string>());
      j.root_hi = parse_rat(cfg["root"][1].get<std::string>());
    }
    if (cfg.contains("basis"))
      for (const auto& v : cfg["basis"]) {
        std::vector<Rat> e;
        for (const auto& c : v) e.push_back(parse_rat(c.get<std::string>()));
        j.basis.push_back(std::move(e));
      }
    if (cfg.contains("C")) j.C = parse_rat(cfg["C"].get<std::string>());
    if (cfg.contains("qmax")) j.qmax = cfg["qmax"].get<long>();
    if (cfg.contains("prec")) j.prec = cfg["prec"].get<long>();
    if (cfg.contains("eta")) j.eta = cfg["eta"].get<double>();
    if (cfg.contains("out")) j.out = cfg["out"].get<std::string>();
    if (cfg.contains("format")) j.format = cfg["format"].get<std::string>();
    if (cfg.contains("verify")) j.verify = cfg["verify"].get<bool>();
    if (cfg.contains("assume_units"))
      for (const auto& v : cfg["assume_units"]) {
        std::vector<Rat> e;
        for (const auto& c : v) e.push_back(parse_rat(c.get<std::string>()));
        j.assume_units.push_back(std::move(e));
      }
    if (cfg.contains("seed")) j.seed = cfg["seed"].get<unsigned long long>();
    if (cfg.contains("level_max")) j.level_max = cfg["level_max"].get<long>();
    if (cfg.contains("height_cap")) j.height_cap = cfg["height_cap"].get<long>();
    if (cfg.contains("nmax")) j.nmax = cfg["nmax"].get<long>();
    if (cfg.contains("samples")) j.samples = cfg["samples"].get<long>();
    if (cfg.contains("Q")) j.probe_q = cfg["Q"].get<long>();
    if (cfg.contains("dim")) j.dim = cfg["dim"].get<int>();
    if (cfg.contains("view_c")) j.view_c = cfg["view_c"].get<double>();
    if (cfg.contains("curves")) j.curves = cfg["curves"].get<bool>();
    if (cfg.contains("unit_cap")) j.unit_cap = cfg["unit_cap"].get<long>();
    if (cfg.contains("source")) j.source = cfg["source"].get<std::string>();
  }
  auto set = [&](const char* name) { return sub->count(name) > 0; };
  if (set("--poly")) j.poly = parse_poly(f.poly);
  if (set("--root")) {
    auto parts = split(f.root, ',');
    if (parts.size() != 2) throw ConfigError("--root expects lo,hi");
    j.have_root = true;
    j.root_lo = parse_rat(parts[0]);
    j.root_hi = parse_rat(parts[1]);
  }
  if (set("--basis")) j.basis = parse_vectors(f.basis);
  if (set("--C")) j.C = parse_rat(f.C);
  if (set("--qmax")) j.qmax = f.qmax;
  if (set("--prec")) j.prec = f.prec;
  if (set("--eta")) j.eta = f.eta;
  if (set("--out")) j.out = f.out;
  if (set("--format")) j.format = f.format;
  if (f.verify) j.verify = true;
  if (set("--assume-units")) j.assume_units = parse_vectors(f.assume_units);
  if (set("--seed")) j.seed = f.seed;
  if (set("--level-max")) j.level_max = f.level_max;
  if (set("--height-cap")) j.height_cap = f.height_cap;
  if (set("--nmax")) j.nmax = f.nmax;
  if (set("--samples")) j.samples = f.samples;
  if (set("--Q")) j.probe_q = f.probe_q;
  if (set("--dim")) j.dim = f.dim;
  if (set("--view-c")) j.view_c = f.view_c;
  if (f.no_curves) j.curves = false;
  if (set("--unit-cap")) j.unit_cap = f.unit_cap;
  if (set("--source")) j.source = f.source;
  return j;
}

// ---- field / lattice construction ----

FieldPtr make_field(const Job& j) {
  if (j.poly.empty()) throw ConfigError("no polynomial given (--poly or config)");
  Rat lo = j.root_lo, hi = j.root_hi;
  if (!j.have_root) {
    QPoly p;
    for (const Int& c : j.poly) p.push_back(Rat(c));
    auto roots = isolate_real_roots(p);
    if (roots.empty()) throw NoRealRootError("polynomial has no real root");
    lo = roots.back().first;
    hi = roots.back().second;
  }
  return field_new(j.poly, lo, hi);
}

ModuleLattice make_job_lattice(const Job& j, const FieldPtr& f) {
  if (j.basis.empty()) return power_basis_lattice(f);
  std::vector<FieldElement> elems;
  for (const auto& v : j.basis) {
    if ((int)v.size() != f->degree())
      throw ConfigError("basis vectors must have length equal to the degree");
    elems.emplace_back(f, v);
  }
  return make_lattice(f, std::move(elems));
}

UnitGroup make_units(const Job& j, const ModuleLattice& lat) {
  MultiplierRingBasis ring = multiplier_ring(lat);
  if (!j.assume_units.empty()) {
    std::vector<FieldElement> given;
    for (const auto& v : j.assume_units) given.emplace_back(lat.field, v);
    return unit_group_from(ring, given);
  }
  return fundamental_units(ring, j.unit_cap);
}

// ---- JSON emission ----

json rat_j(const Rat& r) {
  return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

json elem_j(const FieldElement& x) {
  json a = json::array();
  for (const Rat& c : x.coords()) a.push_back(rat_j(c));
  return a;
}

json qmat_j(const QMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(rat_j(m.at(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit(const Job& j, const std::string& content) {
  if (j.out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(j.out, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + j.out);
  out << content;
}

// ---- commands ----

int cmd_field(const Job& j) {
  FieldPtr f = make_field(j);
  Signature sig = f->signature();
  json rep;
  rep["degree"] = f->degree();
  rep["signature"] = {{"real_embeddings", sig.r_plus_1}, {"complex_pairs", sig.s}};
  json poly = json::array();
  for (const Int& c : f->min_poly_int()) poly.push_back(c.get_str());
  rep["min_poly"] = poly;
  auto [lo, hi] = f->root_selector();
  rep["root_selector"] = {rat_j(lo), rat_j(hi)};
  long prec = std::max<long>(j.prec, 64);
  json emb = json::array();
  for (int i = 0; i < sig.r_plus_1; ++i)
    emb.push_back(format_g(FieldElement::generator(f).embed_real(i, prec).mid_double()));
  for (int i = 0; i < sig.s; ++i) {
    CBall z = FieldElement::generator(f).embed_complex(i, prec);
    emb.push_back({format_g(z.re().mid_double()), format_g(z.im().mid_double())});
  }
  rep["generator_embeddings"] = emb;
  emit(j, rep.dump(2) + "\n");
  return 0;
}

int cmd_dual(const Job& j) {
  FieldPtr f = make_field(j);
  ModuleLattice lat = make_job_lattice(j, f);
  GramMatrix g = gram(lat);
  DualBasis dual = dual_basis(lat);
  json rep;
  rep["gram"] = qmat_j(g.entries);
  rep["gram_det"] = rat_j(g.det);
  json db = json::array();
  for (const FieldElement& e : dual.elements) db.push_back(elem_j(e));
  rep["dual_basis"] = db;
  emit(j, rep.dump(2) + "\n");
  return 0;
}

int cmd_ring(const Job& j) {
  FieldPtr f = make_field(j);
  ModuleLattice lat = make_job_lattice(j, f);
  MultiplierRingBasis ring = multiplier_ring(lat);
  json rep;
  json rb = json::array();
  for (const FieldElement& e : ring.basis) rb.push_back(elem_j(e));
  rep["ring_basis"] = rb;
  rep["index"] = ring.index.get_str();
  emit(j, rep.dump(2) + "\n");
  return 0;
}

int cmd_units(const Job& j) {
  FieldPtr f = make_field(j);
  ModuleLattice lat = make_job_lattice(j, f);
  UnitGroup ug = make_units(j, lat);
  json rep;
  json us = json::array();
  for (const FieldElement& u : ug.fundamental_units) {
    json e;
    e["coords"] = elem_j(u);
    e["sigma0"] = format_g(u.embed_real(0, 96).mid_double());
    json sp = json::array();
    for (int s : sign_pattern(u)) sp.push_back(s);
    e["sign_pattern"] = sp;
    us.push_back(std::move(e));
  }
  rep["fundamental_units"] = us;
  rep["regulator"] = format_g(ug.regulator.mid_double());
  rep["kappa"] = format_g(kappa(ug).kappa);
  rep["certification_cap"] = ug.certification_cap;
  rep["certification_note"] =
      "fundamentality certified only up to the stated coordinate cap";
  emit(j, rep.dump(2) + "\n");
  return 0;
}

std::string approx_json(const ModuleLattice& lat,
                        const std::vector<NormalizedApproximation>& list) {
  json rows = json::array();
  for (const NormalizedApproximation& na : list) {
    json r;
    r["q"] = na.q.get_str();
    json p = json::array();
    for (const Int& x : na.p) p.push_back(x.get_str());
    r["p"] = p;
    json v = json::array();
    for (const Ball& b : na.value) v.push_back(format_g(b.mid_double()));
    r["value"] = v;
    r["source"] = na.has_provenance ? "algebraic" : "oracle";
    if (na.has_provenance) {
      r["s"] = elem_j(na.s);
      r["u"] = elem_j(na.u);
    }
    rows.push_back(std::move(r));
  }
  (void)lat;
  return rows.dump(2) + "\n";
}

int cmd_approx(const Job& j, bool oracle_only) {
  FieldPtr f = make_field(j);
  ModuleLattice lat = make_job_lattice(j, f);
  ApproxWindow w{j.C, j.qmax};
  long prec = std::max<long>(j.prec, 64);

  std::vector<NormalizedApproximation> list;
  if (oracle_only) {
    list = oracle_scan(lat, w, prec, j.eta);
  } else {
    if (j.eta > 0) throw ConfigError("--eta is only supported by scan");
    UnitGroup ug = make_units(j, lat);
    list = enumerate_algebraic(lat, ug, w, prec);
    if (j.verify) {
      std::vector<NormalizedApproximation> oracle = oracle_scan(lat, w, prec);
      if (!same_qp_sets(list, oracle)) {
        std::cerr << "verification mismatch: algebraic " << list.size() << " vs oracle "
                  << oracle.size() << " entries\n";
        return 1;
      }
    }
  }
  if (j.format == "json") {
    emit(j, approx_json(lat, list));
  } else {
    emit(j, approximations_csv(lat, list, csv_context(lat, j.height_cap)));
  }
  return 0;
}

int cmd_norms(const Job& j) {
  if (j.nmax <= 0) throw ConfigError("--nmax must be positive");
  FieldPtr f = make_field(j);
  ModuleLattice lat = make_job_lattice(j, f);
  DualBasis dual = dual_basis(lat);
  NormSpectrum spec = norm_spectrum(dual.elements, j.nmax, j.height_cap);
  json rep;
  rep["min_abs_norm"] = rat_j(spec.min_abs_norm);
  rep["height_cap"] = spec.height_cap;
  json levels = json::array();
  for (const NormLevel& nl : spec.levels) {
    json e;
    e["level"] = rat_j(nl.level);
    e["signed_norm"] = rat_j(nl.signed_norm);
    json w = json::array();
    for (const Int& c : nl.witness) w.push_back(c.get_str());
    e["witness"] = w;
    levels.push_back(std::move(e));
  }
  rep["levels"] = levels;
  json attained = json::array(), missing = json::array();
  for (long k = 1; k <= j.nmax; ++k)
    (level_attained(spec, k) ? attained : missing).push_back(k);
  rep["attained_integer_levels"] = attained;
  rep["missing_integer_levels"] = missing;
  json inert = json::array();
  for (const auto& k : missing) {
    long p = k.get<long>();
    bool prime = p >= 2;
    for (long t = 2; t * t <= p; ++t)
      if (p % t == 0) prime = false;
    if (prime && inert_prime_certificate(f, p))
      inert.push_back({{"p", p}, {"certificate", "norm form has no nonzero root mod p"}});
  }
  rep["inert_prime_certificates"] = inert;
  emit(j, rep.dump(2) + "\n");
  return 0;
}

int cmd_curves(const Job& j) {
  if (j.level_max <= 0) throw ConfigError("--level-max must be positive");
  FieldPtr f = make_field(j);
  ModuleLattice lat = make_job_lattice(j, f);
  json rep;
  if (f->degree() == 2) {
    QuadAccumulation acc = accumulation_set_quadratic(lat, j.level_max, j.height_cap);
    rep["kind"] = "points";
    rep["factor_sq"] = rat_j(acc.factor_sq);
    rep["min_abs_norm"] = rat_j(acc.spectrum.min_abs_norm);
    json pts = json::array();
    for (const auto& [n, b] : acc.points)
      pts.push_back({{"signed_norm", rat_j(n)}, {"point", format_g(b.mid_double())}});
    rep["points"] = pts;
  } else {
    CurveFamily fam =
        accumulation_curves_cubic(lat, j.level_max, j.height_cap, std::max<long>(j.prec, 64));
    rep["kind"] = fam.kind == CurveKind::Ellipse ? "ellipse" : "hyperbola_pair";
    json m = json::array();
    for (const auto& row : fam.m_alpha.m) {
      json r = json::array();
      for (const Ball& b : row) r.push_back(format_g(b.mid_double()));
      m.push_back(std::move(r));
    }
    rep["m_alpha"] = m;
    json ds = json::array();
    for (const Dilation& dl : fam.dilations) {
      json e;
      e["level"] = rat_j(dl.level);
      e["abs_norm"] = rat_j(dl.abs_norm);
      if (fam.kind == CurveKind::HyperbolaPair)
        e["sign_class"] = dl.sign_class > 0 ? "+" : "-";
      json w = json::array();
      for (const Int& c : dl.witness) w.push_back(c.get_str());
      e["witness"] = w;
      ds.push_back(std::move(e));
    }
    rep["dilations"] = ds;
  }
  emit(j, rep.dump(2) + "\n");
  return 0;
}

int cmd_plot(const Job& j) {
  FieldPtr f = make_field(j);
  ModuleLattice lat = make_job_lattice(j, f);
  ApproxWindow w{j.C, j.qmax};
  long prec = std::max<long>(j.prec, 64);
  std::vector<NormalizedApproximation> list;
  if (j.source == "oracle") {
    list = oracle_scan(lat, w, prec);
  } else if (j.source == "algebraic") {
    list = enumerate_algebraic(lat, make_units(j, lat), w, prec);
  } else {
    throw ConfigError("--source must be algebraic or oracle");
  }
  PlotSpec ps;
  ps.view_c = j.view_c;
  ps.curves = j.curves;
  std::string svg = approximations_svg(lat, list, ps, j.level_max, j.height_cap);
  std::string csv = approximations_csv(lat, list, csv_context(lat, j.height_cap));
  if (j.out.empty()) {
    std::cout << svg;
    return 0;
  }
  Job jcsv = j, jsvg = j;
  jcsv.out = j.out + ".csv";
  jsvg.out = j.out + ".svg";
  emit(jcsv, csv);
  emit(jsvg, svg);
  return 0;
}

int cmd_probe(const Job& j) {
  if (j.dim != 1 && j.dim != 2) throw ConfigError("--dim must be 1 or 2");
  if (j.samples <= 0 || j.probe_q <= 0) throw ConfigError("--samples and --Q must be positive");
  std::mt19937_64 rng(j.seed);
  std::uniform_real_distribution<double> unif(0, 1);
  long disp_bad = 0, lin_bad = 0, degenerate = 0;
  double worst_disp_margin = 1e300, worst_lin_margin = 1e300;
  for (long i = 0; i < j.samples; ++i) {
    std::vector<double> alpha;
    for (int k = 0; k < j.dim; ++k) alpha.push_back(unif(rng));
    DispersionProbe dp = dispersion_probe(alpha, j.probe_q);
    if (dp.degenerate) ++degenerate;
    if (!dp.ok) ++disp_bad;
    if (!dp.degenerate)
      worst_disp_margin = std::min(worst_disp_margin, dp.rho_bound - dp.rho_empirical);
    LinearFormProbe lp = linear_form_probe(alpha, j.probe_q);
    if (!lp.ok) ++lin_bad;
    worst_lin_margin = std::min(worst_lin_margin, lp.rho_bound - lp.attained);
  }
  json rep;
  rep["dim"] = j.dim;
  rep["samples"] = j.samples;
  rep["Q"] = j.probe_q;
  rep["seed"] = j.seed;
  rep["dispersion_violations"] = disp_bad;
  rep["linear_form_violations"] = lin_bad;
  rep["degenerate_samples"] = degenerate;
  rep["worst_dispersion_margin"] = format_g(worst_disp_margin);
  rep["worst_linear_form_margin"] = format_g(worst_lin_margin);
  emit(j, rep.dump(2) + "\n");
  return (disp_bad || lin_bad) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normalized Diophantine approximations over quadratic and cubic fields"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
  };
  std::vector<Entry> entries = {
      {"field", "field signature, embeddings, and root selector"},
      {"dual", "trace-form Gram matrix and dual basis"},
      {"ring", "multiplier ring basis and index"},
      {"units", "fundamental units, regulator, and kappa bound"},
      {"approx", "algebraic approximation set (CSV); --verify cross-checks the oracle"},
      {"scan", "brute-force oracle approximation set (CSV)"},
      {"curves", "accumulation points / ellipse / hyperbola dilation report"},
      {"norms", "dual lattice norm spectrum and inert-prime certificates"},
      {"plot", "deterministic SVG (and CSV beside --out) of an approximation set"},
      {"probe", "Monte Carlo transference inequality probes"},
  };
  std::map<std::string, CLI::App*> subs;
  std::map<std::string, Flags> flags;
  for (const Entry& e : entries) {
    CLI::App* s = app.add_subcommand(e.name, e.help);
    add_common(s, flags[e.name]);
    subs[e.name] = s;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  std::string name = app.get_subcommands().front()->get_name();
  try {
    Job j = build_job(subs[name], flags[name]);
    if (name == "field") return cmd_field(j);
    if (name == "dual") return cmd_dual(j);
    if (name == "ring") return cmd_ring(j);
    if (name == "units") return cmd_units(j);
    if (name == "approx") return cmd_approx(j, false);
    if (name == "scan") return cmd_approx(j, true);
    if (name == "curves") return cmd_curves(j);
    if (name == "norms") return cmd_norms(j);
    if (name == "plot") return cmd_plot(j);
    if (name == "probe") return cmd_probe(j);
    return 2;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
