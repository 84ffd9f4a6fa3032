// glospan: command-line front end for groups, marks, spans, norm choices,
// transfer systems and span diagrams.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glospan/glospan.hpp"
#include "glospan/json_io.hpp"

using namespace glospan;

namespace {

constexpr int kOk = 0, kInvalid = 1, kUsage = 2;

const char* kSchemaHelp =
    "Input files are JSON with \"schema\": 1. A span diagram has fields\n"
    "  skeleton    list of group presets, e.g. [\"C1\", \"C2\"]\n"
    "  norm_class  faithful (default), fold or iso\n"
    "  values      one algebra per skeleton group: {dim, unit, products}\n"
    "  inflations  map id \"X->Y#k\" -> matrix (rows = basis of the target value)\n"
    "  norms       map id \"X->Y#k\" -> matrix\n"
    "A transfer system has fields group and pairs [{sub: [...], sup: [...]}].\n"
    "See docs/diagram_schema.md.\n";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);)
    if (!part.empty()) out.push_back(part);
  return out;
}

std::pair<LegClass, LegClass> parse_legs(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError("--legs takes two classes, e.g. full,faithful");
  return {LegClass::parse(parts[0]), LegClass::parse(parts[1])};
}

void require_json(const std::string& format, const char* what) {
  if (format == "tsv") throw UsageError(std::string("tsv output is only available for matrices; ") + what + " is structured");
}

Json subgroup_entry(const GroupPtr& g, int cls) {
  const auto& lat = g->lattice();
  ElementMask h = lat.rep(cls);
  Json j;
  j["order"] = mask_size(h);
  j["conjugates"] = lat.classes[static_cast<std::size_t>(cls)].size();
  j["weyl_order"] = weyl_group(g, h).group->order();
  j["representative"] = subgroup_to_json(h);
  return j;
}

int conjugacy_class_count(const FiniteGroup& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  int count = 0;
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    ++count;
    for (Element c = 0; c < g.order(); ++c) seen[static_cast<std::size_t>(g.conj(c, x))] = true;
  }
  return count;
}

// ---------------------------------------------------------------------------

int group_info(const std::string& spec, int bound, const std::string& format) {
  require_json(format, "group info");
  auto g = make_group(spec, bound);
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "group";
  j["label"] = g->label();
  j["order"] = g->order();
  j["abelian"] = g->is_abelian();
  j["conjugacy_classes"] = conjugacy_class_count(*g);
  Json subs = Json::array();
  for (int c = 0; c < g->lattice().class_count(); ++c) subs.push_back(subgroup_entry(g, c));
  j["subgroup_classes"] = subs;
  emit(j);
  return kOk;
}

Json idempotents_json(const TableOfMarks& t) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "idempotents";
  j["group"] = t.group->label();
  j["basis"] = "orbits";
  Json list = Json::array();
  for (const auto& e : rational_idempotents(t)) {
    Json v = Json::array();
    for (const auto& q : e.coefficients) v.push_back(to_string(q));
    list.push_back(v);
  }
  j["idempotents"] = list;
  return j;
}

int marks_cmd(const std::string& spec, int bound, const std::string& format, const std::string& idempotent_path) {
  auto g = make_group(spec, bound);
  auto t = table_of_marks(g, bound);
  if (!idempotent_path.empty()) {
    std::ofstream out(idempotent_path);
    if (!out) throw UsageError("cannot write '" + idempotent_path + "'");
    out << idempotents_json(t).dump(2) << '\n';
  }
  if (format == "json") {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "marks";
    j["group"] = g->label();
    Json classes = Json::array();
    for (int c = 0; c < t.size(); ++c) classes.push_back(subgroup_entry(g, c));
    j["classes"] = classes;
    j["table"] = t.m;
    j["idempotents"] = idempotents_json(t)["idempotents"];
    emit(j);
    return kOk;
  }
  for (const auto& row : t.m) {
    for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "\t" : "") << row[i];
    std::cout << '\n';
  }
  return kOk;
}

int spans_hom(const std::string& from, const std::string& to, const std::string& legs, int bound, const std::string& format) {
  require_json(format, "spans hom");
  auto [back, fwd] = parse_legs(legs);
  auto x = FiniteGroupoid::of(make_group(from, bound)), y = FiniteGroupoid::of(make_group(to, bound));
  auto hs = hom_set(x, y, back, fwd, bound);
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "hom_set";
  j["from"] = x.label;
  j["to"] = y.label;
  j["legs"] = Json::array({back.name(), fwd.name()});
  j["count"] = hs.size();
  Json classes = Json::array();
  for (int k = 0; k < hs.size(); ++k) {
    const auto& apex = hs.apexes()[static_cast<std::size_t>(hs.entry(k).apex)];
    Json c;
    c["id"] = hs.id(k);
    c["apex_order"] = apex.group.group->order();
    c["apex_subgroup"] = subgroup_to_json(apex.group.inclusion.image());
    c["span"] = span_to_json(hs.at(k));
    classes.push_back(c);
  }
  j["classes"] = classes;
  emit(j);
  return kOk;
}

int spans_compose(const std::string& from, const std::string& via, const std::string& to, int first, int second,
                  const std::string& legs, int bound, const std::string& format) {
  require_json(format, "spans compose");
  auto [back, fwd] = parse_legs(legs);
  auto x = FiniteGroupoid::of(make_group(from, bound)), y = FiniteGroupoid::of(make_group(via, bound)),
       z = FiniteGroupoid::of(make_group(to, bound));
  auto xy = hom_set(x, y, back, fwd, bound), yz = hom_set(y, z, back, fwd, bound), xz = hom_set(x, z, back, fwd, bound);
  if (first < 0 || first >= xy.size()) throw UsageError("--first must be below " + std::to_string(xy.size()));
  if (second < 0 || second >= yz.size()) throw UsageError("--second must be below " + std::to_string(yz.size()));
  auto composite = compose(yz.at(second), xy.at(first));
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "composite";
  j["first"] = xy.id(first);
  j["second"] = yz.id(second);
  j["apex_components"] = composite.apex().size();
  auto k = composite.apex().connected() ? xz.classify(composite) : std::nullopt;
  if (k) j["result"] = xz.id(*k);
  else j["result"] = nullptr;
  emit(j);
  return k ? kOk : kInvalid;
}

Json closure_json(const std::string& name, int bound, const ClosureReport& r) {
  Json j;
  j["choice"] = name;
  j["bound"] = bound;
  j["closed"] = r.closed;
  j["squares"] = r.squares;
  if (r.counterexample) {
    const auto& [f, q, pulled] = *r.counterexample;
    j["counterexample"] = {{"admitted", groupoid_map_to_json(f)}, {"along", groupoid_map_to_json(q)}, {"pulled_back", groupoid_map_to_json(pulled)}};
  }
  return j;
}

int norms_check(const std::string& group, const std::string& choice, const std::string& transfer_path, int bound,
                const std::string& format) {
  require_json(format, "norms check");
  const int given = !group.empty() + !choice.empty() + !transfer_path.empty();
  if (given != 1) throw UsageError("norms check takes exactly one of <group>, --choice or --from-transfer");
  if (bound > kDefaultOrderBound) throw UsageError("--bound exceeds the global order bound " + std::to_string(kDefaultOrderBound));
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "norm_closure";
  Json reports = Json::array();
  bool all_closed = true;
  auto run = [&](const NormChoice& n, Json extra) {
    auto r = verify_norm_choice(n, bound);
    all_closed = all_closed && r.closed;
    Json entry = closure_json(n.name(), bound, r);
    for (auto& [k, v] : extra.items()) entry[k] = v;
    reports.push_back(entry);
  };
  if (!choice.empty()) {
    if (choice == "maximal") run(NormChoice::maximal(), Json::object());
    else if (choice == "minimal") run(NormChoice::minimal(), Json::object());
    else throw UsageError("--choice is maximal or minimal");
  } else if (!transfer_path.empty()) {
    auto t = transfer_system_from_json(read_json(transfer_path));
    run(NormChoice::from_transfer_system(t), Json{{"transfer_system", transfer_system_to_json(t)["pairs"]}, {"group", t.group()->label()}});
  } else {
    auto g = make_group(group);
    for (const auto& t : enumerate_transfer_systems(g))
      run(NormChoice::from_transfer_system(t), Json{{"transfer_system", transfer_system_to_json(t)["pairs"]}, {"group", g->label()}});
  }
  j["closed"] = all_closed;
  j["reports"] = reports;
  emit(j);
  return all_closed ? kOk : kInvalid;
}

int transfer_enumerate(const std::string& spec, int bound, const std::string& format) {
  require_json(format, "transfer enumerate");
  auto g = make_group(spec, bound);
  auto ts = enumerate_transfer_systems(g, bound);
  auto ix = indexing_systems(g, bound);
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "transfer_systems";
  j["group"] = g->label();
  j["count"] = ts.size();
  j["indexing_count"] = ix.size();
  const bool agree = ts.size() == ix.size();
  j["agree"] = agree;
  Json systems = Json::array();
  for (const auto& t : ts) systems.push_back(transfer_system_to_json(t)["pairs"]);
  j["systems"] = systems;
  emit(j);
  return agree ? kOk : kInvalid;
}

int functor_check(const std::string& path, int bound, const std::string& format) {
  require_json(format, "functor check");
  auto d = diagram_from_json(read_json(path), bound);
  auto r = check_functor(d);
  emit(report_to_json(r));
  return r.ok ? kOk : kInvalid;
}

std::vector<GroupPtr> skeleton_from(const std::string& list, int bound) {
  std::vector<GroupPtr> out;
  for (const auto& name : split(list, ',')) out.push_back(make_group(name, bound));
  if (out.empty()) throw UsageError("--skeleton needs at least one group");
  return out;
}

void write_diagram(const SpanDiagram& d, const std::string& out_path) {
  auto j = diagram_to_json(d);
  if (out_path.empty() || out_path == "-") {
    emit(j);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << j.dump(2) << '\n';
}

int functor_free(const std::string& group, const std::string& skeleton, int degree, const std::string& norms, int bound,
                 const std::string& out_path, const std::string& format) {
  require_json(format, "functor free");
  auto sk = skeleton_from(skeleton, bound);
  SkeletonSpans spans(sk, LegClass::parse(norms));
  write_diagram(free_functor(make_group(group, bound), spans, degree), out_path);
  return kOk;
}

int functor_constant(const std::string& skeleton, int dim, const std::string& norms, int bound, const std::string& out_path,
                     const std::string& format) {
  require_json(format, "functor constant");
  if (dim < 1) throw UsageError("--dim must be positive");
  SkeletonSpans spans(skeleton_from(skeleton, bound), LegClass::parse(norms));
  write_diagram(constant_diagram(spans, truncated_line(dim)), out_path);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glospan: finite groups, spans of groupoids, norms and transfer systems"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(kSchemaHelp);
  std::string format;
  int bound = kDefaultOrderBound;
  app.add_option("--format", format, "output format (json or tsv)")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--bound", bound, "order bound")->check(CLI::Range(1, kDefaultOrderBound));

  int code = kOk;
  std::function<int()> action;

  auto* group = app.add_subcommand("group", "group data")->require_subcommand(1);
  std::string spec;
  auto* info = group->add_subcommand("info", "order, subgroup classes and Weyl groups");
  info->add_option("group", spec, "group preset, e.g. C4, S3, D8, C2xC2")->required();
  info->callback([&] { action = [&] { return group_info(spec, bound, format); }; });

  auto* marks = app.add_subcommand("marks", "table of marks (tsv) and rational idempotents");
  std::string idempotents;
  marks->add_option("group", spec, "group preset")->required();
  marks->add_option("--idempotents", idempotents, "write the idempotents as JSON to this file");
  marks->callback([&] { action = [&] { return marks_cmd(spec, bound, format.empty() ? "tsv" : format, idempotents); }; });

  auto* spans = app.add_subcommand("spans", "hom-sets and composition in the span category")->require_subcommand(1);
  std::string from, via, to, legs = "full,faithful";
  int first = 0, second = 0;
  auto* hom = spans->add_subcommand("hom", "list span classes BX <- M -> BY");
  hom->add_option("--from", from, "source group")->required();
  hom->add_option("--to", to, "target group")->required();
  hom->add_option("--legs", legs, "backward,forward leg classes (default full,faithful)");
  hom->callback([&] { action = [&] { return spans_hom(from, to, legs, bound, format); }; });
  auto* comp = spans->add_subcommand("compose", "class of the composite of two span classes");
  comp->add_option("--from", from, "source group")->required();
  comp->add_option("--via", via, "middle group")->required();
  comp->add_option("--to", to, "target group")->required();
  comp->add_option("--first", first, "class index in Hom(from, via)")->required();
  comp->add_option("--second", second, "class index in Hom(via, to)")->required();
  comp->add_option("--legs", legs, "backward,forward leg classes (default full,faithful)");
  comp->callback([&] { action = [&] { return spans_compose(from, via, to, first, second, legs, bound, format); }; });

  auto* norms = app.add_subcommand("norms", "global choices of norms")->require_subcommand(1);
  std::string choice, transfer_path, norm_group;
  int closure_bound = 8;
  auto* ncheck = norms->add_subcommand("check", "closure under base change");
  ncheck->add_option("group", norm_group, "check N(T) for every transfer system T on this group");
  ncheck->add_option("--choice", choice, "maximal or minimal");
  ncheck->add_option("--from-transfer", transfer_path, "transfer system JSON file");
  ncheck->add_option("--bound", closure_bound, "largest group order in the checked squares (default 8)");
  ncheck->callback([&] { action = [&] { return norms_check(norm_group, choice, transfer_path, closure_bound, format); }; });

  auto* transfer = app.add_subcommand("transfer", "transfer and indexing systems")->require_subcommand(1);
  auto* tenum = transfer->add_subcommand("enumerate", "all transfer systems, cross-checked against indexing systems");
  tenum->add_option("group", spec, "group preset")->required();
  tenum->callback([&] { action = [&] { return transfer_enumerate(spec, bound, format); }; });

  auto* functor = app.add_subcommand("functor", "span diagrams of commutative Q-algebras")->require_subcommand(1);
  std::string path, skeleton, out_path, norm_class = "faithful";
  int degree = 2, dim = 2;
  auto* fcheck = functor->add_subcommand("check", "validate a diagram file");
  fcheck->add_option("file", path, "diagram JSON, or - for stdin")->required();
  fcheck->callback([&] { action = [&] { return functor_check(path, bound, format); }; });
  auto* ffree = functor->add_subcommand("free", "the functor represented by BG, truncated");
  ffree->add_option("--group", spec, "representing group")->required();
  ffree->add_option("--skeleton", skeleton, "comma-separated groups")->required();
  ffree->add_option("--degree", degree, "truncation degree (default 2)")->check(CLI::Range(1, 8));
  ffree->add_option("--norms", norm_class, "norm class: faithful, fold or iso");
  ffree->add_option("-o,--output", out_path, "output file (default stdout)");
  ffree->callback([&] { action = [&] { return functor_free(spec, skeleton, degree, norm_class, bound, out_path, format); }; });
  auto* fconst = functor->add_subcommand("constant", "Q[x]/(x^dim) everywhere, identity maps");
  fconst->add_option("--skeleton", skeleton, "comma-separated groups")->required();
  fconst->add_option("--dim", dim, "algebra dimension (default 2)");
  fconst->add_option("--norms", norm_class, "norm class: faithful, fold or iso");
  fconst->add_option("-o,--output", out_path, "output file (default stdout)");
  fconst->callback([&] { action = [&] { return functor_constant(skeleton, dim, norm_class, bound, out_path, format); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    code = action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    if (e.kind() == ErrorKind::ParseError) {
      std::cerr << kSchemaHelp;
      return kUsage;
    }
    return e.kind() == ErrorKind::OrderBoundExceeded ? kUsage : kInvalid;
  }
  return code;
}
