#include "mfpm_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "mfpm/divided_congruence.hpp"
#include "mfpm/eigen_classify.hpp"
#include "mfpm/errors.hpp"
#include "mfpm/nebentypus.hpp"
#include "mfpm_cli/report.hpp"

namespace mfpm::cli {

namespace fs = std::filesystem;

namespace {

// A mathematical negative: the command ran but the answer is "no".
struct Negative {
  std::string reason;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string join_ints(const std::vector<int64_t>& v, const std::string& sep = ",") {
  std::vector<std::string> s;
  for (auto x : v) s.push_back(std::to_string(x));
  return join(s, sep);
}

std::string ring_values(const RingVector& v) {
  std::vector<std::string> s;
  for (const auto& x : v) {
    const std::string t = x.to_string();
    s.push_back(t.find(' ') == std::string::npos ? t : "(" + t + ")");
  }
  return join(s, ",");
}

template <class C>
std::string coefficient_list(const QExpansion<C>& f, int64_t from, int64_t upto) {
  std::vector<std::string> s;
  for (int64_t n = from; n <= std::min(upto, f.truncation()); ++n) s.push_back(coeff_string(f[n]));
  return join(s, ",");
}

// "path[:row]" with a 1-based row, resolved against `base` when relative and
// not found as given.
struct FormRef {
  std::string path;
  std::size_t row = 0;
  std::string id;
};

FormRef resolve_ref(const std::string& text, const fs::path& base) {
  FormRef ref;
  std::string path = text;
  std::size_t row = 1;
  const auto colon = text.rfind(':');
  if (colon != std::string::npos && colon + 1 < text.size() &&
      std::all_of(text.begin() + static_cast<long>(colon) + 1, text.end(), ::isdigit)) {
    path = text.substr(0, colon);
    row = std::stoul(text.substr(colon + 1));
    if (row == 0) throw InputError("form rows are numbered from 1: " + text);
  }
  if (!fs::exists(path) && fs::path(path).is_relative() && fs::exists(base / path)) {
    path = (base / path).string();
  }
  ref.path = path;
  ref.row = row - 1;
  ref.id = fs::path(path).filename().string() + ":" + std::to_string(row);
  return ref;
}

IntQExpansion read_int_form(const FormRef& ref, std::string* digest = nullptr) {
  const SpaceFile file = read_space_file(ref.path);
  if (!file.header.integral()) throw InputError(ref.path + " does not have integer coefficients");
  auto rows = file.integer_rows();
  if (ref.row >= rows.size()) throw InputError(ref.id + ": no such row");
  if (digest) *digest = file.digest;
  return rows[ref.row];
}

SpacePtr load_space(const std::string& path, Report& report) {
  const SpaceFile file = read_space_file(path);
  SpacePtr s = SpaceBasis::from_file(file);
  auto& r = report.add("input");
  r.set("file", fs::path(path).filename().string());
  r.set("digest", file.digest);
  r.set("header", file.header.to_string());
  r.set("dimension", static_cast<long long>(s->dimension()));
  r.set("injectivity_bound", static_cast<long long>(s->injectivity_bound()));
  for (const auto& w : s->warnings()) r.set("warning", w);
  return s;
}

RingPtr make_ring(int64_t p, int64_t m, const std::string& spec) {
  if (!spec.empty()) return ModRing::parse(spec);
  if (p < 2 || m < 1) throw InputError("give --p and --m (or --ring)");
  return ModRing::integers_mod(p, static_cast<int>(m));
}

std::vector<CatalogForm> load_catalog(const std::vector<std::string>& files, Report& report) {
  std::vector<CatalogForm> out;
  for (const auto& path : files) {
    const SpaceFile file = read_space_file(path);
    auto& r = report.add("catalog");
    r.set("file", fs::path(path).filename().string());
    r.set("digest", file.digest);
    const std::string stem = fs::path(path).filename().string();
    if (file.header.integral()) {
      auto rows = file.integer_rows();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        out.push_back(catalog_form(stem + ":" + std::to_string(i + 1), rows[i]));
      }
      r.set("forms", static_cast<long long>(rows.size()));
    } else {
      auto rows = file.nf_rows();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        out.push_back(CatalogForm{stem + ":" + std::to_string(i + 1), rows[i]});
      }
      r.set("forms", static_cast<long long>(rows.size()));
      r.set("field", file.field->describe());
    }
  }
  return out;
}

std::string match_list(const std::vector<StrongMatch>& matches) {
  std::vector<std::string> s;
  for (const auto& m : matches) s.push_back(m.id + "@" + std::to_string(m.root_index));
  return s.empty() ? "none" : join(s, " ");
}

// ---------------------------------------------------------------------------

struct SturmArgs {
  int64_t level = 0;
  int64_t weight = 0;
  bool g0 = false;
  bool g1 = false;
};

int cmd_sturm(const SturmArgs& a, Report& report) {
  if (a.g0 && a.g1) throw InputError("choose one of --g0 and --g1");
  const Group group = a.g0 ? Group::Gamma0 : Group::Gamma1;
  auto& r = report.add("sturm");
  r.set("level", static_cast<long long>(a.level));
  r.set("weight", static_cast<long long>(a.weight));
  r.set("group", a.g0 ? "g0" : "g1");
  r.set("index", static_cast<long long>(a.g0 ? gamma0_index(a.level) : gamma1_index(a.level)));
  r.set("bound", static_cast<long long>(sturm_bound(a.level, a.weight, group)));
  return kSuccess;
}

struct HeckeArgs {
  std::string space;
  int64_t n = 0;
  bool stroke = false;
  std::string cache_dir;
};

int cmd_hecke(const HeckeArgs& a, Report& report) {
  SpacePtr s = load_space(a.space, report);
  std::optional<fs::path> dir;
  if (!a.cache_dir.empty()) dir = fs::path(a.cache_dir);
  HeckeCache cache(dir);
  const auto& op = cache.get(*s, a.stroke ? OperatorKind::Stroke : OperatorKind::T, a.n);
  auto& r = report.add("operator");
  r.set("name", op.name());
  r.set("audited_truncation", static_cast<long long>(op.audited_truncation));
  r.set("convention", "row i holds the coordinates of the image of basis row i");
  r.set("from_disk_cache", cache.disk_hits() > 0);
  for (std::size_t i = 0; i < op.matrix.rows(); ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < op.matrix.cols(); ++j) row.push_back(op.matrix(i, j).get_str());
    r.set("row", join(row, " "));
  }
  return kSuccess;
}

struct ClassifyArgs {
  std::string space;
  int64_t p = 0;
  int64_t m = 0;
  std::string ring;
  int64_t d = 0;
  int64_t bound = 0;
  std::vector<std::string> catalog;
};

int cmd_classify(const ClassifyArgs& a, Report& report) {
  SpacePtr s = load_space(a.space, report);
  const RingPtr ring = make_ring(a.p, a.m, a.ring);
  const int64_t d = a.d > 0 ? a.d : s->level() * ring->p();
  const int64_t b = a.bound > 0 ? a.bound : s->injectivity_bound();
  const auto catalog = load_catalog(a.catalog, report);
  auto& h = report.add("classify");
  h.set("ring", ring->describe());
  h.set("away_from", static_cast<long long>(d));
  h.set("bound", static_cast<long long>(b));
  h.set("kind", s->single_weight() ? "weak" : "dc-weak");
  h.set("residual_irreducibility", "unknown");

  const auto forms = enumerate_weak_eigenforms(s, ring, d, b);
  const auto classes = group_by_system(forms);
  h.set("eigenforms", static_cast<long long>(forms.size()));
  h.set("systems", static_cast<long long>(classes.size()));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    auto& r = report.add("system");
    r.set("index", static_cast<long long>(i + 1));
    r.set("ring", ring->describe());
    r.set("away_from", static_cast<long long>(d));
    r.set("bound", static_cast<long long>(b));
    r.set("eigenvalues", c.system.to_string());
    r.set("hecke_relations", c.system.satisfies_hecke_relations());
    r.set("forms", static_cast<long long>(c.forms.size()));
    r.set("representative", ring_values(c.forms.front().coords));
    r.set("representative_coefficients", ring_values(c.forms.front().values(b)));
    r.set("certificate", "T_n f = a_n(f) f verified in coordinates for n in " +
                             join_ints(hecke_indices(b, d)));
    std::string provenance = s->single_weight() ? "weak" : "dc-weak";
    if (!catalog.empty()) {
      const auto matches = strong_match(c.system, catalog);
      r.set("strong_matches", match_list(matches));
      if (!matches.empty()) {
        provenance = "strong";
      } else if (s->single_weight()) {
        provenance = "weak-only";
      }
    } else {
      r.set("strong_matches", "undecided (no catalog)");
    }
    r.set("provenance", provenance);
  }
  if (forms.empty()) throw Negative{"no normalized weak eigenforms"};
  return kSuccess;
}

struct HalfSumArgs {
  std::string space;
  std::string f;
  std::string g;
  int64_t p = 0;
  int64_t d = 0;
  int64_t bound = 0;
  std::vector<std::string> catalog;
};

int cmd_halfsum(const HalfSumArgs& a, Report& report) {
  SpacePtr s = load_space(a.space, report);
  const fs::path base = fs::path(a.space).parent_path();
  const FormRef fr = resolve_ref(a.f, base), gr = resolve_ref(a.g, base);
  std::string fd, gd;
  const IntQExpansion fq = read_int_form(fr, &fd), gq = read_int_form(gr, &gd);
  report.add("form").set("id", fr.id).set("digest", fd).set("expansion", fq.to_string(19));
  report.add("form").set("id", gr.id).set("digest", gd).set("expansion", gq.to_string(19));
  const auto fc = s->coordinates_of(fq), gc = s->coordinates_of(gq);
  if (!fc) throw InputError(fr.id + " is not in the lattice of " + a.space);
  if (!gc) throw InputError(gr.id + " is not in the lattice of " + a.space);
  const int64_t d = a.d > 0 ? a.d : s->level() * a.p;
  const int64_t b = a.bound > 0 ? a.bound : s->injectivity_bound();
  const auto catalog = load_catalog(a.catalog, report);

  const HalfSum hs = half_sum_construct(s, *fc, *gc, a.p, d, b);
  auto& r = report.add("halfsum");
  r.set("ring", hs.h.ring()->describe());
  r.set("away_from", static_cast<long long>(d));
  r.set("bound", static_cast<long long>(b));
  r.set("coordinates", ring_values(hs.h.coords));
  r.set("coefficients", ring_values(hs.h.values(b)));
  r.set("eigenvalues", hs.system.to_string());
  r.set("possibly_liftable", hs.possibly_liftable);
  r.set("residual_irreducibility", "unknown");
  if (!catalog.empty()) r.set("strong_matches", match_list(strong_match(hs.system, catalog)));
  bool all = true;
  for (const auto& step : hs.certificate) {
    auto& t = report.add("eigenvalue");
    t.set("n", static_cast<long long>(step.n));
    t.set("lambda", hs.lambda.at(step.n).to_string());
    t.set("mu", hs.mu.at(step.n).to_string());
    t.set("half_sum", step.eigenvalue.to_string());
    t.set("verified", step.verified);
    all = all && step.verified;
  }
  if (!all) throw Negative{"the half sum failed its eigen certificate"};
  return kSuccess;
}

struct StripArgs {
  std::string file;
  std::size_t row = 1;
  int64_t target = 0;
  int64_t cmax = 0;
  int64_t p = 0;
  int64_t m = 0;
  int64_t bound = 0;
  std::string basis_dir;
};

int cmd_strip(const StripArgs& a, Report& report) {
  const SpaceFile file = read_space_file(a.file);
  if (!file.header.integral()) throw InputError(a.file + " does not have integer coefficients");
  const auto rows = file.integer_rows();
  if (a.row < 1 || a.row > rows.size()) throw InputError("no row " + std::to_string(a.row));
  const IntQExpansion& f = rows[a.row - 1];
  report.add("input").set("file", fs::path(a.file).filename().string()).set("digest", file.digest)
      .set("row", static_cast<long long>(a.row)).set("level", static_cast<long long>(f.level()));
  const RingPtr ring = make_ring(a.p, a.m, "");
  const fs::path dir = a.basis_dir.empty() ? fs::path(a.file).parent_path() : fs::path(a.basis_dir);
  const int64_t b = a.bound > 0 ? a.bound : f.truncation();
  const auto res = strip_level_search(reduce_mod(f, ring), a.target, a.cmax, b,
                                      directory_bases(dir.empty() ? fs::path(".") : dir, a.target));
  auto& r = report.add("strip-level");
  r.set("ring", ring->describe());
  r.set("target_level", static_cast<long long>(a.target));
  r.set("bound", static_cast<long long>(res.bound));
  r.set("weights_searched", join_ints(res.searched));
  r.set("weights_without_data", join_ints(res.missing));
  for (const auto& n : res.notes) r.set("note", n);
  if (!res.weight) {
    r.set("found", false);
    throw Negative{"search exhausted up to weight " + std::to_string(a.cmax) + " at bound " +
                   std::to_string(res.bound)};
  }
  r.set("found", true);
  r.set("weight", static_cast<long long>(*res.weight));
  r.set("coordinates", ring_values(res.form->coords));
  r.set("basis_digest", res.form->space->digest());
  return kSuccess;
}

struct DivideArgs {
  std::vector<std::string> forms;
  std::string pi;
  int64_t m = 0;
  int64_t show = 20;
};

int cmd_divide(const DivideArgs& a, Report& report) {
  if (a.forms.empty()) throw InputError("no forms given");
  Integer pi;
  if (pi.set_str(a.pi, 10) != 0) throw InputError("--pi must be an integer");
  std::vector<IntQExpansion> ints;
  std::vector<NfQExpansion> nfs;
  NfPtr field;
  for (const auto& text : a.forms) {
    const FormRef ref = resolve_ref(text, fs::current_path());
    const SpaceFile file = read_space_file(ref.path);
    report.add("form").set("id", ref.id).set("digest", file.digest)
        .set("weights", join_ints(file.header.weights));
    if (file.header.integral()) {
      auto rows = file.integer_rows();
      if (ref.row >= rows.size()) throw InputError(ref.id + ": no such row");
      ints.push_back(rows[ref.row]);
    } else {
      auto rows = file.nf_rows();
      if (ref.row >= rows.size()) throw InputError(ref.id + ": no such row");
      if (field && !field->same_as(*file.field)) throw InputError("forms use different number fields");
      field = file.field;
      nfs.push_back(rows[ref.row]);
    }
  }
  auto& r = report.add("divide");
  r.set("pi", pi.get_str());
  r.set("m", static_cast<long long>(a.m));
  try {
    if (nfs.empty()) {
      const auto w = divide_congruence(ints, pi, a.m);
      r.set("audited_truncation", static_cast<long long>(w.audited_truncation));
      r.set("weights", join_ints(w.f.weights()));
      r.set("coefficients", coefficient_list(w.f, 1, a.show));
      r.set("expansion", w.f.to_string(a.show));
    } else {
      for (const auto& f : ints) {
        std::vector<NfElement> c;
        for (const auto& x : f.coeffs()) c.push_back(field->from_integer(x));
        nfs.emplace_back(std::move(c), f.level(), f.weights(), f.character());
      }
      const auto w = divide_congruence(nfs, pi, a.m);
      r.set("field", field->describe());
      r.set("audited_truncation", static_cast<long long>(w.audited_truncation));
      r.set("weights", join_ints(w.f.weights()));
      r.set("coefficients", coefficient_list(w.f, 1, a.show));
    }
  } catch (const CongruenceFailure& e) {
    r.set("first_failure", static_cast<long long>(e.index()));
    throw Negative{e.what()};
  }
  r.set("check", "pi^m * f equals the sum of the inputs through the audited truncation");
  return kSuccess;
}

struct EqualizeArgs {
  std::vector<std::string> forms;
  int64_t p = 0;
  int64_t m = 0;
  int64_t show = 20;
  std::string out;
};

void write_forms(const std::string& path, const std::vector<IntQExpansion>& forms, int64_t weight) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  int64_t level = 1, trunc = forms.front().truncation();
  for (const auto& f : forms) {
    level = arith::lcm(level, f.level());
    trunc = std::min(trunc, f.truncation());
  }
  out << "# equalized forms\n";
  out << "space level=" << level << " weight=" << weight << " group=g1 char=none trunc=" << trunc
      << " coeffring=int\n";
  for (const auto& f : forms) out << coefficient_list(f, 1, trunc) << "\n";
}

int cmd_equalize(const EqualizeArgs& a, Report& report) {
  std::vector<IntQExpansion> forms;
  for (const auto& text : a.forms) {
    const FormRef ref = resolve_ref(text, fs::current_path());
    std::string digest;
    forms.push_back(read_int_form(ref, &digest));
    report.add("form").set("id", ref.id).set("digest", digest)
        .set("weight", static_cast<long long>(forms.back().weight()));
  }
  if (forms.empty()) throw InputError("no forms given");
  EqualizedForms res;
  try {
    res = equalize_weights(forms, a.p, a.m);
  } catch (const PreconditionError& e) {
    throw Negative{e.what()};
  }
  auto& r = report.add("equalize");
  r.set("p", static_cast<long long>(a.p));
  r.set("m", static_cast<long long>(a.m));
  r.set("target_weight", static_cast<long long>(res.target_weight));
  r.set("audited_truncation", static_cast<long long>(res.audited_truncation));
  r.set("powers", join_ints(res.powers));
  r.set("check", "each output is congruent to its input mod p^m through the audited truncation");
  for (std::size_t i = 0; i < res.forms.size(); ++i) {
    r.set("output", std::to_string(i + 1) + ": " + coefficient_list(res.forms[i], 1, a.show));
  }
  if (!a.out.empty()) {
    write_forms(a.out, res.forms, res.target_weight);
    r.set("written", a.out);
  }
  return kSuccess;
}

struct ObstructArgs {
  int64_t level = 0;
  int64_t p = 0;
  int64_t m = 0;
  std::string chi;
};

int cmd_obstruct(const ObstructArgs& a, Report& report) {
  const DirichletCharacter chi = DirichletCharacter::parse(a.chi, a.level);
  if (chi.modulus() != a.level) throw InputError("character modulus does not match --level");
  const auto d = decompose_character(chi, a.p);
  auto& r = report.add("decomposition");
  r.set("character", chi.to_string());
  r.set("p", static_cast<long long>(d.p));
  r.set("N", static_cast<long long>(d.level_prime_to_p));
  r.set("r", static_cast<long long>(d.r));
  r.set("psi", d.psi.to_string());
  r.set("teichmuller_exponent", static_cast<long long>(d.teichmuller_exponent));
  r.set("eta", d.eta.to_string());
  r.set("eta_order", static_cast<long long>(d.eta.order()));
  r.set("s", static_cast<long long>(d.s));
  const auto v = obstruction_check(d, a.m);
  auto& o = report.add("obstruction");
  o.set("m", static_cast<long long>(a.m));
  o.set("ring", v.ring->describe());
  o.set("ambient_size", v.ambient_size.get_str());
  o.set("base_image_size", v.base_image_size.get_str());
  for (const auto& ev : v.values) {
    o.set("eta_value", std::to_string(ev.generator) + " -> " + ev.value.to_string() +
                           (ev.base_residue ? " in base as " + std::to_string(*ev.base_residue)
                                            : " outside base"));
  }
  o.set("shortcut", v.shortcut ? "blocked" : "not_blocked_by_this_test");
  o.set("verdict", v.blocked ? "blocked" : "not_blocked_by_this_test");
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modular forms and Hecke algebras modulo prime powers", "mfpm"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SturmArgs sturm;
  auto* c_sturm = app.add_subcommand("sturm", "Sturm bound for level and weight");
  c_sturm->add_option("level", sturm.level)->required()->check(CLI::PositiveNumber);
  c_sturm->add_option("weight", sturm.weight)->required()->check(CLI::PositiveNumber);
  c_sturm->add_flag("--g0", sturm.g0, "Gamma0(N)");
  c_sturm->add_flag("--g1", sturm.g1, "Gamma1(N) (default)");

  HeckeArgs hecke;
  auto* c_hecke = app.add_subcommand("hecke-matrix", "Matrix of T_n (or [n]) on a basis file");
  c_hecke->add_option("space", hecke.space)->required();
  c_hecke->add_option("n", hecke.n)->required()->check(CLI::PositiveNumber);
  c_hecke->add_flag("--stroke", hecke.stroke, "the operator [n] = n (T_n^2 - T_{n^2})");
  c_hecke->add_option("--cache-dir", hecke.cache_dir, "directory for persisted matrices");

  ClassifyArgs cls;
  auto* c_cls = app.add_subcommand("classify", "Enumerate and classify weak eigenforms mod p^m");
  c_cls->add_option("space", cls.space)->required();
  c_cls->add_option("--p", cls.p);
  c_cls->add_option("--m", cls.m);
  c_cls->add_option("--ring", cls.ring, "coefficient ring, e.g. \"ring p=3 m=2 unramified f=2\"");
  c_cls->add_option("--D", cls.d, "exclude n sharing a factor with D (default level * p)");
  c_cls->add_option("--bound", cls.bound, "largest n checked (default: injectivity bound)");
  c_cls->add_option("--catalog", cls.catalog, "forms files with characteristic zero eigenforms");

  HalfSumArgs hs;
  auto* c_hs = app.add_subcommand("halfsum", "h = (f + g)/2 mod p^2 with its eigen certificate");
  c_hs->add_option("space", hs.space)->required();
  c_hs->add_option("--f", hs.f, "form reference file[:row]")->required();
  c_hs->add_option("--g", hs.g, "form reference file[:row]")->required();
  c_hs->add_option("--p", hs.p)->required();
  c_hs->add_option("--D", hs.d);
  c_hs->add_option("--bound", hs.bound);
  c_hs->add_option("--catalog", hs.catalog);

  StripArgs strip;
  auto* c_strip = app.add_subcommand("strip-level", "Find a level-N form congruent to f mod p^m");
  c_strip->add_option("file", strip.file)->required();
  c_strip->add_option("--row", strip.row, "row of the file holding f (from 1)");
  c_strip->add_option("--target-level", strip.target)->required();
  c_strip->add_option("--cmax", strip.cmax)->required();
  c_strip->add_option("--p", strip.p)->required();
  c_strip->add_option("--m", strip.m)->required();
  c_strip->add_option("--bound", strip.bound, "coefficients compared (default: truncation)");
  c_strip->add_option("--basis-dir", strip.basis_dir, "directory with S_<k>_G1_<N>.basis files");

  DivideArgs div;
  auto* c_div = app.add_subcommand("divide", "Divide a congruence sum g_k = 0 mod pi^m");
  c_div->add_option("forms", div.forms, "form references file[:row]")->required();
  c_div->add_option("--pi", div.pi)->required();
  c_div->add_option("--m", div.m)->required();
  c_div->add_option("--show", div.show, "coefficients printed");

  EqualizeArgs eq;
  auto* c_eq = app.add_subcommand("equalize", "Bring forms to a common weight keeping them mod p^m");
  c_eq->add_option("forms", eq.forms)->required();
  c_eq->add_option("--p", eq.p)->required();
  c_eq->add_option("--m", eq.m)->required();
  c_eq->add_option("--show", eq.show);
  c_eq->add_option("--out", eq.out, "write the equalized forms as a forms file");

  ObstructArgs ob;
  auto* c_ob = app.add_subcommand("obstruct", "Nebentypus decomposition and determinant obstruction");
  c_ob->add_option("--level", ob.level)->required();
  c_ob->add_option("--p", ob.p)->required();
  c_ob->add_option("--m", ob.m)->required();
  c_ob->add_option("--char", ob.chi, "M:e1,e2,... or trivial")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  Report report;
  auto& echo = report.add("command");
  echo.set("args", join(args, " "));
  int code = kSuccess;
  try {
    if (*c_sturm) code = cmd_sturm(sturm, report);
    else if (*c_hecke) code = cmd_hecke(hecke, report);
    else if (*c_cls) code = cmd_classify(cls, report);
    else if (*c_hs) code = cmd_halfsum(hs, report);
    else if (*c_strip) code = cmd_strip(strip, report);
    else if (*c_div) code = cmd_divide(div, report);
    else if (*c_eq) code = cmd_equalize(eq, report);
    else if (*c_ob) code = cmd_obstruct(ob, report);
  } catch (const Negative& n) {
    report.add("result").set("status", "negative").set("reason", n.reason);
    code = kNegative;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    report.add("result").set("status", "negative").set("reason", e.what());
    code = kNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (code == kSuccess) report.add("result").set("status", "ok");
  report.write(out);
  return code;
}

}  // namespace mfpm::cli
