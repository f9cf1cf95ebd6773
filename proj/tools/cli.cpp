#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "model_io.hpp"

namespace clouds::cli {

namespace {

using io::Model;

/// Bad usage detected after parsing, e.g. a command given the wrong kind.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  int decimal = -1;
  std::string model;
  std::string event;
  std::string event_file;
  std::string oracle = "lp";
  std::string to;
  bool json = false;
  std::string order;
  std::string method;
  std::size_t levels = 0;
  std::string side = "both";
  std::string alpha;
  std::string output;
  std::size_t samples = 200;
};

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out) : opt_(opt), out_(out), caps_(caps_from_env()) {}

  int validate();
  int nonempty();
  int constraints();
  int convert();
  int probability(bool lower);
  int lowprob_all();
  int monotone();
  int violation();
  int bounds();
  int from_intervals();
  int discretize();
  int focal();
  int plot_data();

 private:
  static Caps caps_from_env();

  std::string num(const Rational& r) const {
    return opt_.decimal >= 0 ? r.to_decimal(opt_.decimal) : r.to_string();
  }
  void table(const std::vector<std::vector<std::string>>& rows) const;
  void print_cloud(const Cloud& c) const;
  void print_genpbox(const GeneralizedPBox& g) const;
  void print_randomset(const MassFunction& m) const;
  void emit(const Model& m) const;

  const Model& model();
  const OutcomeSpace& space();
  const Cloud& cloud(const char* command);
  CredalConstraints credal();
  std::vector<EventSet> events(bool allow_file);
  int empty_credal_set() const {
    out_ << "empty credal set\n";
    return kFinding;
  }

  const Options& opt_;
  std::ostream& out_;
  Caps caps_;
  std::optional<Model> model_;
};

Caps Runner::caps_from_env() {
  Caps caps;
  if (const char* v = std::getenv("CREDAL_LP_CAP")) {
    std::size_t used = 0;
    unsigned long n = 0;
    try {
      n = std::stoul(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || v[used] != '\0') throw UsageError(std::string("CREDAL_LP_CAP must be a count, got '") + v + "'");
    caps.set_function = caps.two_monotone = caps.linear_extensions = n;
  }
  return caps;
}

void Runner::table(const std::vector<std::vector<std::string>>& rows) const {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    out_ << line << "\n";
  }
}

void Runner::print_cloud(const Cloud& c) const {
  std::vector<std::vector<std::string>> rows{{"element", "delta", "pi"}};
  for (std::size_t i = 0; i < c.size(); ++i) rows.push_back({c.space().label(i), num(c.delta(i)), num(c.pi(i))});
  table(rows);
}

void Runner::print_genpbox(const GeneralizedPBox& g) const {
  std::vector<std::vector<std::string>> rows{{"element", "flow", "fhigh", "class"}};
  for (std::size_t k = 0; k < g.classes().size(); ++k) {
    for (auto i : g.classes()[k]) {
      rows.push_back({g.space().label(i), num(g.flow()[i]), num(g.fhigh()[i]), std::to_string(k)});
    }
  }
  table(rows);
}

void Runner::print_randomset(const MassFunction& m) const {
  std::vector<std::vector<std::string>> rows{{"focal", "mass"}};
  for (const auto& [set, mass] : m.focal()) rows.push_back({set.to_string(m.space()), num(mass)});
  table(rows);
}

void Runner::emit(const Model& m) const {
  if (opt_.json) {
    out_ << io::serialize_model(m);
    return;
  }
  std::visit(
      [this](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Cloud>) print_cloud(v);
        if constexpr (std::is_same_v<T, GeneralizedPBox>) print_genpbox(v);
        if constexpr (std::is_same_v<T, MassFunction>) print_randomset(v);
        if constexpr (std::is_same_v<T, PossibilityDistribution>) {
          std::vector<std::vector<std::string>> rows{{"element", "pi"}};
          for (std::size_t i = 0; i < v.space().size(); ++i) rows.push_back({v.space().label(i), num(v[i])});
          table(rows);
        }
      },
      m);
}

const Model& Runner::model() {
  if (!model_) {
    std::ifstream in(opt_.model);
    if (!in) throw io::SchemaError("cannot read model file '" + opt_.model + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    model_ = io::parse_model(buf.str());
  }
  return *model_;
}

const OutcomeSpace& Runner::space() {
  return std::visit(
      [](const auto& v) -> const OutcomeSpace& {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ContinuousCloud>) {
          throw UsageError("this command needs a discrete model, got continuous_cloud");
        } else {
          return v.space();
        }
      },
      model());
}

const Cloud& Runner::cloud(const char* command) {
  if (const auto* c = std::get_if<Cloud>(&model())) return *c;
  throw UsageError(std::string(command) + " needs a cloud model, got " + io::kind_of(model()));
}

CredalConstraints Runner::credal() {
  const auto& m = model();
  if (const auto* c = std::get_if<Cloud>(&m)) return cloud_constraints(*c);
  if (const auto* p = std::get_if<PossibilityDistribution>(&m)) return possibility_constraints(*p);
  if (const auto* g = std::get_if<GeneralizedPBox>(&m)) return genpbox_constraints(*g);
  if (const auto* iv = std::get_if<ProbabilityInterval>(&m)) return interval_constraints(*iv);
  if (const auto* rs = std::get_if<MassFunction>(&m)) {
    // Bel(A) <= P(A) on every event; the lower envelope is Bel itself.
    const auto n = rs->space().size();
    if (n > caps_.set_function) {
      throw SizeError("random-set constraints enumerate 2^" + std::to_string(n) + " events; cap is 2^" +
                      std::to_string(caps_.set_function));
    }
    std::vector<ConstraintRow> rows;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      const auto e = EventSet::from_mask(n, mask);
      const Rational b = bel(*rs, e);
      if (b > 0) rows.push_back({e, b, Rational(1)});
    }
    return CredalConstraints(rs->space(), std::move(rows));
  }
  throw UsageError("this command needs a discrete model, got continuous_cloud");
}

std::vector<EventSet> Runner::events(bool allow_file) {
  const bool have_event = !opt_.event.empty();
  const bool have_file = !opt_.event_file.empty();
  if (have_event == have_file) {
    throw UsageError(allow_file ? "give exactly one of --event and --event-file" : "--event is required");
  }
  const auto& s = space();
  if (have_event) return {EventSet::parse(s, opt_.event)};
  std::ifstream in(opt_.event_file);
  if (!in) throw UsageError("cannot read event file '" + opt_.event_file + "'");
  std::vector<EventSet> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.back() == '\r') line.pop_back();
    out.push_back(EventSet::parse(s, line));
  }
  return out;
}

int Runner::validate() {
  const auto& m = model();
  if (const auto* cc = std::get_if<ContinuousCloud>(&m)) {
    out_ << "valid continuous_cloud on [" << num(cc->lo()) << "," << num(cc->hi()) << "]\n";
  } else {
    out_ << "valid " << io::kind_of(m) << " with " << space().size() << " elements\n";
  }
  return kOk;
}

int Runner::nonempty() {
  const bool ok = std::holds_alternative<Cloud>(model()) ? is_nonempty(std::get<Cloud>(model()))
                                                         : is_feasible(credal());
  if (!ok) return empty_credal_set();
  out_ << "nonempty\n";
  return kOk;
}

int Runner::constraints() {
  const auto c = credal();
  for (const auto& row : c.rows()) {
    const auto e = row.event.to_string(c.space());
    if (row.lo == row.hi) {
      out_ << "P(" << e << ") = " << num(row.lo) << "\n";
    } else {
      out_ << num(row.lo) << " <= P(" << e << ") <= " << num(row.hi) << "\n";
    }
  }
  return kOk;
}

int Runner::convert() {
  const auto& m = model();
  const auto kind = io::kind_of(m);
  auto unsupported = [&]() -> int {
    throw UsageError("cannot convert " + kind + " to " + opt_.to);
  };
  if (opt_.to == "possibility-pair") {
    if (opt_.json) throw UsageError("--json is not available for possibility-pair");
    const auto [pi, co] = to_possibility_pair(cloud("convert --to possibility-pair"));
    std::vector<std::vector<std::string>> rows{{"element", "pi", "1-delta"}};
    for (std::size_t i = 0; i < pi.space().size(); ++i) rows.push_back({pi.space().label(i), num(pi[i]), num(co[i])});
    table(rows);
    return kOk;
  }
  if (opt_.to == "cloud") {
    if (const auto* c = std::get_if<Cloud>(&m)) emit(*c);
    else if (const auto* g = std::get_if<GeneralizedPBox>(&m)) emit(genpbox_to_cloud(*g));
    else if (const auto* p = std::get_if<PossibilityDistribution>(&m)) emit(fuzzy_cloud(*p));
    else if (const auto* iv = std::get_if<ProbabilityInterval>(&m)) emit(intervals_to_cloud(*iv, caps_));
    else return unsupported();
    return kOk;
  }
  if (opt_.to == "genpbox") {
    if (const auto* c = std::get_if<Cloud>(&m)) {
      if (!is_nonempty(*c)) return empty_credal_set();
      emit(cloud_to_genpbox(*c));
    } else if (const auto* g = std::get_if<GeneralizedPBox>(&m)) {
      emit(*g);
    } else {
      return unsupported();
    }
    return kOk;
  }
  if (opt_.to == "randomset") {
    if (const auto* c = std::get_if<Cloud>(&m)) {
      if (!is_nonempty(*c)) return empty_credal_set();
      emit(cloud_to_randomset(*c));
    } else if (const auto* p = std::get_if<PossibilityDistribution>(&m)) {
      emit(possibility_to_randomset(*p));
    } else if (const auto* rs = std::get_if<MassFunction>(&m)) {
      emit(*rs);
    } else {
      return unsupported();
    }
    return kOk;
  }
  return unsupported();
}

int Runner::probability(bool lower) {
  const auto evs = events(true);
  std::vector<Rational> values;
  if (opt_.oracle == "transport") {
    const auto& c = cloud("--oracle transport");
    for (const auto& e : evs) {
      const auto v = lower ? cloud_lower_via_transport(c, e) : cloud_lower_via_transport(c, e.complement());
      if (!v) return empty_credal_set();
      values.push_back(lower ? *v : 1 - *v);
    }
  } else {
    const auto c = credal();
    for (const auto& e : evs) {
      const auto v = lower ? lp_lower(c, e) : lp_upper(c, e);
      if (!v) return empty_credal_set();
      values.push_back(*v);
    }
  }
  if (!opt_.event.empty()) {
    out_ << num(values.front()) << "\n";
    return kOk;
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < evs.size(); ++k) rows.push_back({evs[k].to_string(space()), num(values[k])});
  table(rows);
  return kOk;
}

int Runner::lowprob_all() {
  const auto f = lower_prob_function(credal(), caps_);
  if (!f) return empty_credal_set();
  std::vector<std::vector<std::string>> rows{{"event", "lower"}};
  for (std::uint64_t mask = 0; mask < f->values().size(); ++mask) {
    rows.push_back({EventSet::from_mask(f->size(), mask).to_string(f->space()), num((*f)[mask])});
  }
  table(rows);
  return kOk;
}

int Runner::monotone() {
  const auto f = lower_prob_function(credal(), caps_);
  if (!f) return empty_credal_set();
  if (opt_.order == "2") {
    const auto v = find_2_monotone_violation(*f, caps_);
    if (!v) {
      out_ << "2-monotone\n";
      return kOk;
    }
    out_ << "not 2-monotone: A = " << v->a.to_string(f->space()) << ", B = " << v->b.to_string(f->space())
         << "\n";
    return kFinding;
  }
  const auto masses = mobius_transform(*f);
  for (std::uint64_t mask = 0; mask < masses.size(); ++mask) {
    if (masses[mask] < 0) {
      out_ << "not infinitely monotone: Moebius mass " << num(masses[mask]) << " on "
           << EventSet::from_mask(f->size(), mask).to_string(f->space()) << "\n";
      return kFinding;
    }
  }
  out_ << "infinitely monotone\n";
  return kOk;
}

int Runner::violation() {
  std::vector<std::vector<std::string>> rows;
  if (const auto* c = std::get_if<Cloud>(&model())) {
    if (!is_nonempty(*c)) return empty_credal_set();
    const auto v = find_2monotone_violation(*c, caps_);
    if (!v) {
      out_ << "no violation\n";
      return kOk;
    }
    rows = {{"A", v->a.to_string(c->space()), num(v->lower_a)},
            {"B", v->b.to_string(c->space()), num(v->lower_b)},
            {"A u B", (v->a | v->b).to_string(c->space()), num(v->lower_union)},
            {"A n B", (v->a & v->b).to_string(c->space()), num(v->lower_intersection)}};
  } else {
    const auto f = lower_prob_function(credal(), caps_);
    if (!f) return empty_credal_set();
    const auto v = find_2_monotone_violation(*f, caps_);
    if (!v) {
      out_ << "no violation\n";
      return kOk;
    }
    const auto& s = f->space();
    rows = {{"A", v->a.to_string(s), num(f->at(v->a))},
            {"B", v->b.to_string(s), num(f->at(v->b))},
            {"A u B", (v->a | v->b).to_string(s), num(f->at(v->a | v->b))},
            {"A n B", (v->a & v->b).to_string(s), num(f->at(v->a & v->b))}};
  }
  table(rows);
  return kFinding;
}

int Runner::bounds() {
  const auto e = events(false).front();
  Rational lo, hi;
  if (opt_.method == "exact") {
    const auto c = credal();
    const auto l = lp_lower(c, e);
    if (!l) return empty_credal_set();
    lo = *l;
    hi = *lp_upper(c, e);
  } else if (opt_.method == "outer") {
    std::tie(lo, hi) = outer_bounds(cloud("bounds --method outer"), e);
  } else {
    const auto& c = cloud("bounds --method inner");
    if (!is_nonempty(c)) return empty_credal_set();
    const auto rs = cloud_to_randomset(c);
    lo = bel(rs, e);
    hi = pl(rs, e);
  }
  out_ << "[" << num(lo) << ", " << num(hi) << "]\n";
  return kOk;
}

int Runner::from_intervals() {
  const auto* iv = std::get_if<ProbabilityInterval>(&model());
  if (!iv) throw UsageError("from-intervals needs a probintervals model, got " + io::kind_of(model()));
  if (opt_.method == "masson-denoeux") {
    if (!opt_.order.empty()) throw UsageError("--order only applies to --method order");
    emit(intervals_to_cloud(*iv, caps_));
    return kOk;
  }
  if (opt_.order.empty()) throw UsageError("--method order needs --order, e.g. --order z,w,y,x");
  std::vector<std::string> order;
  std::stringstream ss(opt_.order);
  for (std::string label; std::getline(ss, label, ',');) order.push_back(label);
  emit(intervals_to_genpbox(*iv, order));
  return kOk;
}

int Runner::discretize() {
  const auto* cc = std::get_if<ContinuousCloud>(&model());
  if (!cc) throw UsageError("discretize needs a continuous_cloud model, got " + io::kind_of(model()));
  const auto d = clouds::discretize(*cc, opt_.levels);
  const bool want_outer = opt_.side != "inner";
  const bool want_inner = opt_.side != "outer";
  if (want_inner && !d.inner) {
    out_ << "no inner cloud at " << opt_.levels << " levels (rounding puts delta above pi)\n";
    return kFinding;
  }
  std::vector<std::string> header{"cell"};
  if (want_outer) header.insert(header.end(), {"outer_delta", "outer_pi"});
  if (want_inner) header.insert(header.end(), {"inner_delta", "inner_pi"});
  std::vector<std::vector<std::string>> rows{header};
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    std::vector<std::string> r{d.space.label(i)};
    if (want_outer) r.insert(r.end(), {num(d.outer.delta(i)), num(d.outer.pi(i))});
    if (want_inner) r.insert(r.end(), {num(d.inner->delta(i)), num(d.inner->pi(i))});
    rows.push_back(std::move(r));
  }
  table(rows);
  return kOk;
}

int Runner::focal() {
  Rational alpha;
  try {
    alpha = Rational::parse(opt_.alpha);
  } catch (const Error& e) {
    throw UsageError(std::string("--alpha: ") + e.what());
  }
  if (const auto* cc = std::get_if<ContinuousCloud>(&model())) {
    out_ << alpha_focal(*cc, alpha).to_string() << "\n";
    return kOk;
  }
  const auto& c = cloud("focal");
  if (alpha <= 0 || alpha > 1) throw DomainError("alpha must lie in (0,1], got " + alpha.to_string());
  out_ << (upper_cut(c, alpha, false) - lower_cut(c, alpha, false)).to_string(c.space()) << "\n";
  return kOk;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

int Runner::plot_data() {
  std::ostringstream csv;
  std::size_t count = 0;
  const auto& m = model();
  if (const auto* cc = std::get_if<ContinuousCloud>(&m)) {
    if (opt_.samples < 2) throw UsageError("--samples must be at least 2");
    const auto bps = cc->breakpoints();
    std::set<Rational> xs(bps.begin(), bps.end());
    const auto n = static_cast<std::int64_t>(opt_.samples - 1);
    for (std::int64_t k = 0; k <= n; ++k) xs.insert(cc->lo() + (cc->hi() - cc->lo()) * Rational(k, n));
    csv << "x,delta,pi\n";
    for (const auto& x : xs) csv << num(x) << "," << num(cc->delta()(x)) << "," << num(cc->pi()(x)) << "\n";
    count = xs.size();
  } else {
    std::optional<Cloud> c;
    if (const auto* p = std::get_if<Cloud>(&m)) c = *p;
    else if (const auto* p = std::get_if<PossibilityDistribution>(&m)) c = fuzzy_cloud(*p);
    else if (const auto* g = std::get_if<GeneralizedPBox>(&m)) c = genpbox_to_cloud(*g);
    else if (const auto* iv = std::get_if<ProbabilityInterval>(&m)) c = intervals_to_cloud(*iv, caps_);
    else throw UsageError("plot-data has no delta/pi view of a randomset");
    csv << "element,delta,pi\n";
    for (std::size_t i = 0; i < c->size(); ++i) {
      csv << csv_field(c->space().label(i)) << "," << num(c->delta(i)) << "," << num(c->pi(i)) << "\n";
    }
    count = c->size();
  }
  std::ofstream file(opt_.output);
  if (!file || !(file << csv.str())) throw UsageError("cannot write '" + opt_.output + "'");
  out_ << "wrote " << count << " rows to " << opt_.output << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Clouds, p-boxes and credal sets with exact arithmetic", "clouds"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--decimal", opt.decimal, "Print numbers rounded to this many decimal places")
      ->check(CLI::NonNegativeNumber);

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("model", opt.model, "Model file (JSON)")->required();
    return s;
  };
  auto event_options = [&](CLI::App* s, bool with_file) {
    s->add_option("--event", opt.event, "Comma-separated element labels");
    if (with_file) s->add_option("--event-file", opt.event_file, "File with one event per line");
  };

  auto* validate = sub("validate", "Check a model against its invariants");
  auto* nonempty = sub("nonempty", "Decide whether the credal set is non-empty");
  auto* constraints = sub("constraints", "List the linear constraints of the credal set");
  auto* convert = sub("convert", "Convert between representations");
  convert->add_option("--to", opt.to, "Target representation")
      ->required()
      ->check(CLI::IsMember({"genpbox", "cloud", "randomset", "possibility-pair"}));
  convert->add_flag("--json", opt.json, "Write a model document instead of a table");
  auto* lowprob = sub("lowprob", "Lower probability of events");
  auto* upprob = sub("upprob", "Upper probability of events");
  for (auto* s : {lowprob, upprob}) {
    event_options(s, true);
    s->add_option("--oracle", opt.oracle, "lp or transport")->check(CLI::IsMember({"lp", "transport"}));
  }
  auto* lowprob_all = sub("lowprob-all", "Lower probability of every event");
  auto* monotone = sub("monotone", "Test 2-monotonicity or infinite monotonicity");
  monotone->add_option("--order", opt.order, "2 or inf")->required()->check(CLI::IsMember({"2", "inf"}));
  auto* violation = sub("violation", "Find a pair of events violating 2-monotonicity");
  auto* bounds = sub("bounds", "Bounds on P(A)");
  event_options(bounds, false);
  bounds->add_option("--method", opt.method, "outer, inner or exact")
      ->required()
      ->check(CLI::IsMember({"outer", "inner", "exact"}));
  auto* from_intervals = sub("from-intervals", "Build a cloud or p-box from probability intervals");
  from_intervals->add_option("--method", opt.method, "masson-denoeux or order")
      ->required()
      ->check(CLI::IsMember({"masson-denoeux", "order"}));
  from_intervals->add_option("--order", opt.order, "Total order, lowest first, e.g. z,w,y,x");
  from_intervals->add_flag("--json", opt.json, "Write a model document instead of a table");
  auto* discretize = sub("discretize", "Approximate a continuous cloud on a level grid");
  discretize->add_option("--levels", opt.levels, "Number of grid steps N")->required()->check(CLI::PositiveNumber);
  discretize->add_option("--side", opt.side, "inner, outer or both")
      ->check(CLI::IsMember({"inner", "outer", "both"}));
  auto* focal = sub("focal", "Focal set at level alpha");
  focal->add_option("--alpha", opt.alpha, "Level in (0,1]")->required();
  auto* plot_data = sub("plot-data", "Write delta and pi as CSV");
  plot_data->add_option("-o,--output", opt.output, "CSV file to write")->required();
  plot_data->add_option("--samples", opt.samples, "Uniform grid size for continuous clouds");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  const std::vector<std::pair<CLI::App*, std::function<int(Runner&)>>> commands = {
      {validate, &Runner::validate},
      {nonempty, &Runner::nonempty},
      {constraints, &Runner::constraints},
      {convert, &Runner::convert},
      {lowprob, [](Runner& r) { return r.probability(true); }},
      {upprob, [](Runner& r) { return r.probability(false); }},
      {lowprob_all, &Runner::lowprob_all},
      {monotone, &Runner::monotone},
      {violation, &Runner::violation},
      {bounds, &Runner::bounds},
      {from_intervals, &Runner::from_intervals},
      {discretize, &Runner::discretize},
      {focal, &Runner::focal},
      {plot_data, &Runner::plot_data},
  };
  try {
    Runner runner(opt, out);
    for (const auto& [s, fn] : commands) {
      if (s->parsed()) return fn(runner);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace clouds::cli
