// knotpoly: Alexander and twisted Alexander polynomials from diagrams or
// presentations, plus periodicity obstruction checks.
//
// Exit codes: 0 success (obstruct: witnesses found), 1 obstruct found no
// witness within caps, 2 input/parse error, 3 computation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotpoly/knotpoly.hpp"

namespace kp = knotpoly;
using ordered_json = nlohmann::ordered_json;

namespace {

struct InputFlags {
  std::string knot, pd_file, pres_file;

  void add_to(CLI::App* cmd, const std::string& prefix = "") {
    auto* a = cmd->add_option("--" + prefix + "knot", knot, "catalog entry name");
    auto* b = cmd->add_option("--" + prefix + "pd", pd_file, "file containing a PD code");
    auto* c = cmd->add_option("--" + prefix + "pres", pres_file,
                              "file containing a presentation");
    a->excludes(b)->excludes(c);
    b->excludes(c);
  }
  bool given() const { return !knot.empty() || !pd_file.empty() || !pres_file.empty(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw kp::parse_error("cannot open file: " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Strips comment lines so PD/presentation files may carry them.
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string out, line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    out += line;
    out += ' ';
  }
  return out;
}

struct ResolvedInput {
  kp::Presentation pres;
  std::optional<kp::PDCode> pd;
  std::string description;
};

ResolvedInput resolve(const InputFlags& in) {
  if (!in.given()) throw kp::parse_error("no input given (use --knot, --pd or --pres)", 0);
  ResolvedInput out;
  if (!in.knot.empty()) {
    const kp::KnotEntry& e = kp::catalog_get(in.knot);
    out.pd = e.pd;
    out.pres = kp::wirtinger(e.pd);
    out.description = "catalog:" + in.knot;
  } else if (!in.pd_file.empty()) {
    out.pd = kp::parse_pd(strip_comments(slurp(in.pd_file)));
    out.pres = kp::wirtinger(*out.pd);
    out.description = "pd:" + in.pd_file;
  } else {
    out.pres = kp::parse_presentation(strip_comments(slurp(in.pres_file)));
    out.description = "pres:" + in.pres_file;
  }
  return out;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output_path);
    out << text;
  }
}

ordered_json witness_json(const kp::MuraWitness& w) {
  return ordered_json{{"lambda", w.lambda},
                      {"f", kp::to_string(w.f)},
                      {"f_symmetric", kp::symmetric_up_to_unit(w.f.poly())}};
}

ordered_json witness_json(const kp::TwistedWitness& w) {
  return ordered_json{{"lambda", w.lambda},
                      {"chi", kp::to_string(w.chi)},
                      {"delta0", kp::to_string(w.delta0_candidate)},
                      {"f", kp::to_string(w.f)},
                      {"f_symmetric", kp::symmetric_up_to_unit(w.f.poly())}};
}

ordered_json rep_json(const kp::Representation& rep) {
  ordered_json mats = ordered_json::array();
  for (const kp::FpMat& m : rep.images) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.n; ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < m.n; ++j) row.push_back(m.at(i, j));
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  return mats;
}

// Caps defaulting: flags win, then KNOT_OBSTRUCT_CAPS ("lambda_max=8,max_chi=500,
// max_nodes=100000"), then built-ins.
struct CapsConfig {
  std::optional<long long> lambda_max;
  std::optional<std::uint64_t> max_chi;
  std::optional<std::uint64_t> max_nodes;

  static CapsConfig from_env() {
    CapsConfig c;
    const char* env = std::getenv("KNOT_OBSTRUCT_CAPS");
    if (!env) return c;
    std::string s(env);
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t end = s.find_first_of(",;", pos);
      if (end == std::string::npos) end = s.size();
      std::string item = s.substr(pos, end - pos);
      std::size_t eq = item.find('=');
      if (eq != std::string::npos) {
        std::string key = item.substr(0, eq);
        long long value = std::atoll(item.c_str() + eq + 1);
        if (key == "lambda_max") c.lambda_max = value;
        if (key == "max_chi") c.max_chi = static_cast<std::uint64_t>(value);
        if (key == "max_nodes") c.max_nodes = static_cast<std::uint64_t>(value);
      }
      pos = end + 1;
    }
    return c;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Alexander / twisted Alexander polynomials and periodicity obstructions"};
  app.require_subcommand(1);

  std::string format = "text", output_path;
  app.add_option("--format", format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output", output_path, "write the report to a file");
  app.fallthrough();  // --format/--output may follow the subcommand

  CapsConfig env_caps = CapsConfig::from_env();

  // --- list ----------------------------------------------------------------
  auto* cmd_list = app.add_subcommand("list", "list catalog entries");

  // --- alexander -----------------------------------------------------------
  auto* cmd_alex = app.add_subcommand("alexander", "classical Alexander polynomial");
  InputFlags alex_in;
  alex_in.add_to(cmd_alex);
  long long alex_mod = 0;
  cmd_alex->add_option("--mod", alex_mod, "also reduce mod this prime");
  int alex_comp = 0;
  cmd_alex->add_option("--comp", alex_comp, "K component for links (default 0)");

  // --- twisted ---------------------------------------------------------------
  auto* cmd_tw = app.add_subcommand("twisted", "twisted Alexander polynomials");
  InputFlags tw_in;
  tw_in.add_to(cmd_tw);
  std::string tw_rep_file;
  std::vector<long long> tw_search;
  bool tw_mod_check = false;
  int tw_comp = 0;
  cmd_tw->add_option("--rep", tw_rep_file, "representation file");
  cmd_tw->add_option("--search", tw_search, "search representations: p n")->expected(2);
  cmd_tw->add_flag("--mod-check", tw_mod_check,
                   "also compare against the classical polynomial mod p");
  cmd_tw->add_option("--comp", tw_comp, "K component for links (default 0)");

  // --- obstruct --------------------------------------------------------------
  auto* cmd_ob = app.add_subcommand("obstruct", "periodicity obstruction search");
  InputFlags ob_in;
  ob_in.add_to(cmd_ob);
  long long ob_p = 0, ob_r = 1;
  int ob_twisted_n = 0;
  std::optional<long long> ob_lambda_max;
  std::optional<std::uint64_t> ob_max_chi, ob_max_nodes;
  cmd_ob->add_option("--p", ob_p, "prime")->required();
  cmd_ob->add_option("--r", ob_r, "power: test period p^r");
  cmd_ob->add_option("--twisted", ob_twisted_n,
                     "also run the twisted search at this representation dimension");
  cmd_ob->add_option("--lambda-max", ob_lambda_max, "override the lambda bound");
  cmd_ob->add_option("--max-chi", ob_max_chi, "cap on enumerated characteristic polynomials");
  cmd_ob->add_option("--max-nodes", ob_max_nodes, "cap on representation search nodes");

  // --- verify ----------------------------------------------------------------
  auto* cmd_ver = app.add_subcommand("verify", "verify the periodicity identities");
  cmd_ver->require_subcommand(1);

  auto* ver_mura = cmd_ver->add_subcommand("murasugi", "classical congruence K vs quotient");
  InputFlags vm_k, vm_kbar;
  vm_k.add_to(ver_mura);
  vm_kbar.add_to(ver_mura, "kbar-");
  long long vm_lambda = 0, vm_p = 0, vm_r = 1;
  ver_mura->add_option("--lambda", vm_lambda)->required();
  ver_mura->add_option("--p", vm_p)->required();
  ver_mura->add_option("--r", vm_r);

  auto* ver_rel = cmd_ver->add_subcommand("rel", "link identity on a 2-component diagram");
  InputFlags vr_in;
  vr_in.add_to(ver_rel);
  int vr_comp = 0;
  ver_rel->add_option("--k-comp", vr_comp, "which component is K (default 0)");

  auto* ver_tw = cmd_ver->add_subcommand("twisted", "twisted condition K vs quotient");
  InputFlags vt_k, vt_kbar, vt_link;
  vt_k.add_to(ver_tw);
  vt_kbar.add_to(ver_tw, "kbar-");
  vt_link.add_to(ver_tw, "link-");
  std::string vt_rep, vt_repbar, vt_link_rep, vt_la_word;
  long long vt_lambda = 0, vt_p = 0, vt_r = 1;
  int vt_link_comp = 0;
  ver_tw->add_option("--rep", vt_rep, "representation of the knot group")->required();
  ver_tw->add_option("--repbar", vt_repbar, "representation of the quotient group")->required();
  ver_tw->add_option("--la-word", vt_la_word, "axis longitude as a word in K's generators")
      ->required();
  ver_tw->add_option("--lambda", vt_lambda)->required();
  ver_tw->add_option("--p", vt_p)->required();
  ver_tw->add_option("--r", vt_r);
  ver_tw->add_option("--link-rep", vt_link_rep, "representation of the link group");
  ver_tw->add_option("--link-comp", vt_link_comp, "K component of the link input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : 2;
  }

  std::ostringstream text;
  ordered_json json;

  if (cmd_list->parsed()) {
    json["entries"] = ordered_json::array();
    for (const auto& name : kp::catalog_list()) {
      json["entries"].push_back(name);
      text << name << "\n";
    }
  }

  if (cmd_alex->parsed()) {
    ResolvedInput in = resolve(alex_in);
    kp::CanonicalPoly delta =
        in.pres.num_components() == 1
            ? kp::alexander_poly(in.pres, kp::integers)
            : kp::link_poly(in.pres, alex_comp, kp::integers);
    json["input"] = in.description;
    json["delta"] = kp::to_string(delta);
    text << "input: " << in.description << "\n";
    text << "delta = " << kp::to_string(delta) << "\n";
    if (alex_mod != 0) {
      kp::LaurentPoly red = kp::reduce_mod_p(delta.poly(), alex_mod);
      json["mod"] = alex_mod;
      json["delta_mod_p"] = kp::to_string(red);
      text << "delta mod " << alex_mod << " = " << kp::to_string(red) << "\n";
    }
  }

  if (cmd_tw->parsed()) {
    ResolvedInput in = resolve(tw_in);
    json["input"] = in.description;
    text << "input: " << in.description << "\n";
    std::vector<kp::Representation> reps;
    bool truncated = false;
    if (!tw_rep_file.empty()) {
      reps.push_back(kp::parse_representation(slurp(tw_rep_file), in.pres));
    } else if (tw_search.size() == 2) {
      kp::RepSearchCaps caps;
      if (env_caps.max_nodes) caps.max_nodes = *env_caps.max_nodes;
      auto found = kp::find_representations(in.pres, tw_search[0],
                                            static_cast<int>(tw_search[1]), caps);
      reps = found.reps;
      truncated = found.truncated;
    } else {
      throw kp::parse_error("twisted: give --rep FILE or --search p n", 0);
    }
    json["truncated"] = truncated;
    if (truncated) text << "representation search truncated by caps\n";
    json["reps"] = ordered_json::array();
    for (const kp::Representation& rep : reps) {
      kp::WadaFraction w = kp::wada_poly(in.pres, rep, tw_comp);
      kp::CanonicalPoly d0 = kp::delta0(in.pres, rep, tw_comp);
      kp::CanonicalPoly delta = kp::twisted_alexander(in.pres, rep, tw_comp);
      ordered_json entry;
      entry["p"] = rep.p;
      entry["n"] = rep.n;
      entry["images"] = rep_json(rep);
      entry["wada_numerator"] = kp::to_string(w.numerator);
      entry["wada_denominator"] = kp::to_string(w.denominator);
      entry["delta0"] = kp::to_string(d0);
      entry["delta"] = kp::to_string(delta);
      text << "rep (p=" << rep.p << ", n=" << rep.n << "):\n";
      text << "  wada = (" << kp::to_string(w.numerator) << ") / ("
           << kp::to_string(w.denominator) << ")\n";
      text << "  delta0 = " << kp::to_string(d0) << "\n";
      text << "  delta = " << kp::to_string(delta) << "\n";
      if (tw_mod_check) {
        kp::CanonicalPoly classical =
            in.pres.num_components() == 1
                ? kp::alexander_poly(in.pres, kp::prime_field(rep.p))
                : kp::link_poly(in.pres, tw_comp, kp::prime_field(rep.p));
        bool match = rep.n == 1 && kp::equal_up_to_unit(delta.poly(), classical.poly());
        entry["classical_mod_p"] = kp::to_string(classical);
        entry["matches_classical"] = match;
        text << "  classical mod " << rep.p << " = " << kp::to_string(classical)
             << (match ? "  (matches)" : "  (differs)") << "\n";
      }
      json["reps"].push_back(entry);
    }
  }

  int exit_code = 0;

  if (cmd_ob->parsed()) {
    ResolvedInput in = resolve(ob_in);
    const long long q = kp::prime_power(ob_p, ob_r);
    kp::CanonicalPoly delta =
        in.pres.num_components() == 1
            ? kp::alexander_poly(in.pres, kp::prime_field(ob_p))
            : kp::link_poly(in.pres, 0, kp::prime_field(ob_p));
    kp::ObstructionCaps caps;
    caps.lambda_max = ob_lambda_max ? ob_lambda_max : env_caps.lambda_max;
    if (ob_max_chi)
      caps.max_chi = *ob_max_chi;
    else if (env_caps.max_chi)
      caps.max_chi = *env_caps.max_chi;

    json["input"] = in.description;
    json["p"] = ob_p;
    json["r"] = ob_r;
    json["q"] = q;
    ordered_json caps_json;
    caps_json["lambda_max"] =
        caps.lambda_max ? ordered_json(*caps.lambda_max) : ordered_json(nullptr);
    caps_json["max_chi"] = caps.max_chi;
    json["caps"] = caps_json;
    json["delta_mod_p"] = kp::to_string(delta);
    text << "input: " << in.description << "\n";
    text << "delta mod " << ob_p << " = " << kp::to_string(delta) << "\n";
    text << "testing period q = " << q << "\n";

    bool witnesses_found;
    bool exhausted = true;
    if (ob_twisted_n == 0) {
      auto witnesses = kp::murasugi_check(delta.poly(), ob_p, ob_r, caps.lambda_max);
      json["witnesses"] = ordered_json::array();
      for (const auto& w : witnesses) {
        json["witnesses"].push_back(witness_json(w));
        text << "witness: lambda = " << w.lambda << ", f = " << kp::to_string(w.f)
             << (kp::symmetric_up_to_unit(w.f.poly()) ? "  (f symmetric)"
                                                      : "  (f not symmetric)")
             << "\n";
      }
      witnesses_found = !witnesses.empty();
    } else {
      kp::RepSearchCaps rep_caps;
      if (ob_max_nodes)
        rep_caps.max_nodes = *ob_max_nodes;
      else if (env_caps.max_nodes)
        rep_caps.max_nodes = *env_caps.max_nodes;
      auto found = kp::find_representations(in.pres, ob_p, ob_twisted_n, rep_caps);
      if (found.truncated) exhausted = false;
      json["reps"] = ordered_json::array();
      witnesses_found = true;
      for (const kp::Representation& rep : found.reps) {
        kp::CanonicalPoly delta_rho = kp::twisted_alexander(in.pres, rep);
        auto result = kp::twisted_search(delta_rho.poly(), ob_p, ob_r, ob_twisted_n, caps);
        if (!result.exhausted) exhausted = false;
        ordered_json entry;
        entry["images"] = rep_json(rep);
        entry["delta_rho"] = kp::to_string(delta_rho);
        entry["witnesses"] = ordered_json::array();
        for (const auto& w : result.witnesses)
          entry["witnesses"].push_back(witness_json(w));
        json["reps"].push_back(entry);
        text << "rep delta = " << kp::to_string(delta_rho) << ": " << result.witnesses.size()
             << " witness(es)\n";
        for (const auto& w : result.witnesses)
          text << "  lambda = " << w.lambda << ", chi = " << kp::to_string(w.chi)
               << ", delta0 = " << kp::to_string(w.delta0_candidate)
               << ", f = " << kp::to_string(w.f) << "\n";
        if (result.witnesses.empty()) witnesses_found = false;
      }
    }
    json["exhausted"] = exhausted;
    const std::string verdict =
        witnesses_found ? "consistent-with-period" : "period-excluded-within-caps";
    json["verdict"] = verdict;
    text << "verdict: " << verdict << "\n";
    exit_code = witnesses_found ? 0 : 1;
  }

  if (ver_mura->parsed()) {
    ResolvedInput k = resolve(vm_k), kbar = resolve(vm_kbar);
    auto rep = kp::murasugi_verify(k.pres, kbar.pres, vm_lambda, vm_p, vm_r);
    json["identity"] = "murasugi";
    json["lambda"] = rep.lambda;
    json["p"] = rep.p;
    json["r"] = rep.r;
    json["lhs"] = kp::to_string(rep.lhs);
    json["rhs"] = kp::to_string(rep.rhs);
    json["equal"] = rep.equal;
    text << "lhs = " << kp::to_string(rep.lhs) << "\n";
    text << "rhs = " << kp::to_string(rep.rhs) << "\n";
    text << "verdict: " << (rep.equal ? "equal" : "NOT equal") << "\n";
  }

  if (ver_rel->parsed()) {
    ResolvedInput in = resolve(vr_in);
    if (!in.pd) throw kp::parse_error("verify rel needs a diagram input", 0);
    kp::RelReport rep = kp::verify_rel_identity(*in.pd, vr_comp);
    json["identity"] = "rel";
    json["lambda"] = rep.lambda;
    json["delta_l"] = kp::to_string(rep.delta_l);
    json["delta_k"] = kp::to_string(rep.delta_k);
    json["lhs"] = kp::to_string(rep.lhs);
    json["rhs"] = kp::to_string(rep.rhs);
    json["equal"] = rep.equal;
    text << "lambda = " << rep.lambda << "\n";
    text << "delta_L = " << kp::to_string(rep.delta_l) << "\n";
    text << "delta_K = " << kp::to_string(rep.delta_k) << "\n";
    text << "lhs = " << kp::to_string(rep.lhs) << "  vs  rhs = " << kp::to_string(rep.rhs)
         << "\n";
    text << "verdict: " << (rep.equal ? "equal up to unit" : "NOT equal") << "\n";
  }

  if (ver_tw->parsed()) {
    ResolvedInput k = resolve(vt_k), kbar = resolve(vt_kbar);
    kp::Representation rep = kp::parse_representation(slurp(vt_rep), k.pres);
    kp::Representation repbar = kp::parse_representation(slurp(vt_repbar), kbar.pres);
    kp::Word la = kp::parse_word(vt_la_word, k.pres.generator_names);
    std::optional<kp::LinkInput> link;
    if (vt_link.given()) {
      ResolvedInput l = resolve(vt_link);
      if (vt_link_rep.empty())
        throw kp::parse_error("verify twisted: --link-rep required with a link input", 0);
      link = kp::LinkInput{l.pres, kp::parse_representation(slurp(vt_link_rep), l.pres),
                           vt_link_comp};
    }
    auto report = kp::twisted_verify(k.pres, rep, kbar.pres, repbar, la, vt_lambda, vt_p,
                                     vt_r, link);
    json["identity"] = "twisted";
    json["lambda"] = report.lambda;
    json["p"] = report.p;
    json["r"] = report.r;
    json["q"] = report.q;
    json["delta_k"] = kp::to_string(report.delta_k);
    json["delta_kbar"] = kp::to_string(report.delta_kbar);
    json["delta0_kbar"] = kp::to_string(report.delta0_kbar);
    json["det_factor"] = kp::to_string(report.det_factor);
    json["checks"] = ordered_json::array();
    text << "delta_K = " << kp::to_string(report.delta_k) << "\n";
    text << "delta_Kbar = " << kp::to_string(report.delta_kbar) << "\n";
    text << "det factor = " << kp::to_string(report.det_factor) << "\n";
    for (const auto& c : report.checks) {
      json["checks"].push_back(ordered_json{{"name", c.name},
                                            {"lhs", kp::to_string(c.lhs)},
                                            {"rhs", kp::to_string(c.rhs)},
                                            {"equal", c.equal}});
      text << c.name << ": lhs = " << kp::to_string(c.lhs)
           << "  vs  rhs = " << kp::to_string(c.rhs) << "  -> "
           << (c.equal ? "equal" : "NOT equal") << "\n";
    }
  }

  emit(format == "json" ? json.dump(2) + "\n" : text.str(), output_path);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const kp::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const kp::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kp::data_error& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
