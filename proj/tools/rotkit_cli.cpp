// rotkit: bounds, witness sequences and exact rotation distances between
// ordered binary trees.
//
// Exit codes: 0 success, 1 verification mismatch, 2 input or usage error,
// 3 resource limit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotkit/bench.hpp"
#include "rotkit/rotkit.hpp"

namespace {

using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kMismatch = 1, kUsage = 2, kLimit = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& name) {
  if (name == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(name, std::ios::binary);
  if (!in) throw UsageError("cannot open " + name);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

rotkit::Tree read_tree(const std::string& name) {
  try {
    return rotkit::parse_tree(read_input(name));
  } catch (const rotkit::ParseError& e) {
    throw UsageError(name + ": " + e.what());
  }
}

std::pair<rotkit::Tree, rotkit::Tree> read_pair(const std::string& s, const std::string& t) {
  if (s == "-" && t == "-") throw UsageError("only one input may be read from standard input");
  auto a = read_tree(s);
  auto b = read_tree(t);
  if (a.leaf_count() != b.leaf_count()) throw rotkit::SizeMismatchError(a.leaf_count(), b.leaf_count());
  return {std::move(a), std::move(b)};
}

std::size_t default_state_limit() {
  if (const char* env = std::getenv("ROTKIT_STATE_LIMIT"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError("ROTKIT_STATE_LIMIT must be a non-negative integer");
  }
  return rotkit::kDefaultStateLimit;
}

Json bounds_json(const rotkit::DistanceBounds& b) {
  return Json{{"n", b.n}, {"e", b.e}, {"lower", b.lower}, {"upper", b.upper}};
}

std::string bounds_text(const rotkit::DistanceBounds& b) {
  std::ostringstream out;
  out << "n=" << b.n << " e=" << b.e << " lower=" << b.lower << " upper=" << b.upper;
  return out.str();
}

Json sequence_json(const rotkit::RotationSequence& seq) {
  Json ops = Json::array();
  std::vector<rotkit::Side> steps;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    seq.path_steps(i, steps);
    std::string path;
    path.reserve(steps.size());
    for (auto s : steps) path += s == rotkit::Side::Left ? 'L' : 'R';
    ops.push_back({{"dir", seq.direction(i) == rotkit::Direction::Right ? "R" : "L"}, {"path", path}});
  }
  return ops;
}

struct Options {
  std::string s_file, t_file, seq_file;
  bool json = false;
  bool refined = false;
  std::size_t exact_threshold = 10;
  std::size_t sharp_min = 13;
  std::size_t state_limit = 0;
  bool state_limit_set = false;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string shape = "random";
  bool labeled = false;
  bool count_only = false;
  std::size_t min_n = 1000, max_n = 64000, samples = 5;
};

int cmd_bounds(const Options& o) {
  const auto [s, t] = read_pair(o.s_file, o.t_file);
  const auto b = rotkit::distance_bounds(s, t);
  std::optional<rotkit::RefinedUpper> refined;
  if (o.refined) {
    rotkit::RefinedOptions ro;
    ro.exact_threshold = o.exact_threshold;
    ro.sharp_bound_min_size = o.sharp_min;
    ro.state_limit = o.state_limit;
    refined = rotkit::refined_upper(s, t, ro);
  }
  if (o.json) {
    auto j = bounds_json(b);
    if (refined) j["refined"] = {{"value", refined->value}, {"is_exact", refined->is_exact}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << bounds_text(b);
    if (refined) {
      std::cout << " refined=" << refined->value << " is_exact=" << (refined->is_exact ? "true" : "false");
    }
    std::cout << '\n';
  }
  return kOk;
}

int cmd_sequence(const Options& o) {
  const auto [s, t] = read_pair(o.s_file, o.t_file);
  const auto seq = rotkit::approx_sequence(s, t);
  if (o.json) {
    auto j = bounds_json(rotkit::distance_bounds(s, t));
    j["sequence"] = sequence_json(seq);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << rotkit::to_string(seq) << '\n' << "length=" << seq.size() << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto [s, t] = read_pair(o.s_file, o.t_file);
  rotkit::RotationSequence seq;
  try {
    seq = rotkit::parse_rotation_sequence(read_input(o.seq_file));
  } catch (const rotkit::ParseError& e) {
    throw UsageError(o.seq_file + ": " + e.what());
  }
  const auto got = rotkit::apply_sequence(s, seq);
  if (got == t) {
    std::cout << "ok length=" << seq.size() << '\n';
    return kOk;
  }
  const auto a = rotkit::serialize_tree(got);
  const auto b = rotkit::serialize_tree(t);
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  std::cout << "mismatch at offset " << k << "\n  got:      " << a << "\n  expected: " << b << '\n';
  return kMismatch;
}

int cmd_exact(const Options& o) {
  const auto [s, t] = read_pair(o.s_file, o.t_file);
  const auto d = rotkit::exact_distance(s, t, o.state_limit);
  if (o.json) {
    auto j = bounds_json(rotkit::distance_bounds(s, t));
    j["exact"] = d;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "exact=" << d << '\n';
  }
  return kOk;
}

int cmd_gen(const Options& o) {
  rotkit::Tree t;
  if (o.shape == "random") {
    t = rotkit::random_tree(o.n, o.seed);
  } else if (o.shape == "left-comb") {
    t = rotkit::build_comb(o.n, rotkit::Side::Left);
  } else {
    t = rotkit::build_comb(o.n, rotkit::Side::Right);
  }
  std::cout << rotkit::serialize_tree(t, o.labeled) << '\n';
  return kOk;
}

int cmd_enum(const Options& o) {
  if (o.count_only) {
    if (o.n > 35) throw UsageError("count overflows for n > 35");
    std::cout << rotkit::catalan(o.n) << '\n';
    return kOk;
  }
  if (o.n > rotkit::kDefaultEnumerationMax) {
    throw LimitError("enumeration is limited to n <= " + std::to_string(rotkit::kDefaultEnumerationMax));
  }
  for (const auto& t : rotkit::enumerate_trees(o.n)) std::cout << rotkit::serialize_tree(t) << '\n';
  return kOk;
}

int cmd_diameter(const Options& o) {
  const auto d = rotkit::diameter(o.n, o.state_limit);
  if (o.json) {
    Json j{{"n", o.n},
           {"diameter", d.value},
           {"from", rotkit::serialize_tree(d.from)},
           {"to", rotkit::serialize_tree(d.to)}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "n=" << o.n << " diameter=" << d.value << " from=" << rotkit::serialize_tree(d.from)
              << " to=" << rotkit::serialize_tree(d.to) << '\n';
  }
  return kOk;
}

int cmd_bench(const Options& o) {
  if (o.min_n == 0 || o.min_n > o.max_n) throw UsageError("need 0 < --min-n <= --max-n");
  std::cout << "n,samples,mean_ms,median_ms\n";
  std::size_t n = o.min_n;
  for (;;) {
    const auto row = rotkit::time_bounds_and_sequence(n, o.samples, o.seed);
    std::cout << row.n << ',' << row.samples << ',' << row.mean_ms << ',' << row.median_ms << '\n';
    if (n == o.max_n) break;
    n = n > o.max_n / 2 ? o.max_n : 2 * n;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation distance bounds and witnesses for ordered binary trees"};
  app.require_subcommand(1);
  Options o;

  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("S", o.s_file, "File holding the source tree, or - for stdin")->required();
    sub->add_option("T", o.t_file, "File holding the target tree, or - for stdin")->required();
  };
  auto add_limit = [&](CLI::App* sub) {
    sub->add_option("--state-limit", o.state_limit, "Maximum stored states for exact solving")
        ->each([&](const std::string&) { o.state_limit_set = true; });
  };

  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on the rotation distance");
  add_pair(bounds);
  bounds->add_flag("--json", o.json, "Print JSON");
  bounds->add_flag("--refined", o.refined, "Also compute the refined upper bound");
  bounds->add_option("--exact-threshold", o.exact_threshold, "Solve pieces up to this size exactly");
  bounds->add_option("--sharp-min", o.sharp_min, "Smallest piece size given the 2n-6 bound");
  add_limit(bounds);

  auto* sequence = app.add_subcommand("sequence", "Witness rotation sequence from S to T");
  add_pair(sequence);
  sequence->add_flag("--json", o.json, "Print JSON");

  auto* verify = app.add_subcommand("verify", "Check that a rotation sequence takes S to T");
  add_pair(verify);
  verify->add_option("SEQ", o.seq_file, "File of whitespace-separated rotation ops")->required();

  auto* exact = app.add_subcommand("exact", "Exact rotation distance by search");
  add_pair(exact);
  exact->add_flag("--json", o.json, "Print JSON");
  add_limit(exact);

  auto* gen = app.add_subcommand("gen", "Generate a tree");
  gen->add_option("--n", o.n, "Internal nodes")->required();
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--shape", o.shape, "Shape")->check(CLI::IsMember({"random", "left-comb", "right-comb"}));
  gen->add_flag("--labeled", o.labeled, "Print numbered leaves");

  auto* en = app.add_subcommand("enum", "Enumerate every tree shape of a size");
  en->add_option("--n", o.n, "Internal nodes")->required();
  en->add_flag("--count-only", o.count_only, "Print only the number of shapes");

  auto* diam = app.add_subcommand("diameter", "Diameter of the rotation graph");
  diam->add_option("--n", o.n, "Internal nodes")->required();
  diam->add_flag("--json", o.json, "Print JSON");
  add_limit(diam);

  auto* bench = app.add_subcommand("bench", "Time bounds plus witness on random pairs");
  bench->add_option("--min-n", o.min_n, "Smallest size");
  bench->add_option("--max-n", o.max_n, "Largest size; sizes double from --min-n");
  bench->add_option("--samples", o.samples, "Pairs per size");
  bench->add_option("--seed", o.seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (!o.state_limit_set) o.state_limit = default_state_limit();
    if (*bounds) return cmd_bounds(o);
    if (*sequence) return cmd_sequence(o);
    if (*verify) return cmd_verify(o);
    if (*exact) return cmd_exact(o);
    if (*gen) return cmd_gen(o);
    if (*en) return cmd_enum(o);
    if (*diam) return cmd_diameter(o);
    if (*bench) return cmd_bench(o);
  } catch (const rotkit::StateLimitError& e) {
    std::cerr << "rotkit: " << e.what() << '\n';
    return kLimit;
  } catch (const LimitError& e) {
    std::cerr << "rotkit: " << e.what() << '\n';
    return kLimit;
  } catch (const std::exception& e) {
    std::cerr << "rotkit: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
