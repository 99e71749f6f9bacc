#include "matula/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <new>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "matula/analysis.hpp"
#include "matula/codec.hpp"
#include "matula/error.hpp"
#include "matula/gim.hpp"
#include "matula/primes.hpp"
#include "matula/tree.hpp"

namespace matula::cli {

namespace {

using nlohmann::json;

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || value.empty()) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  }
  return out;
}

OutputFormat parse_format(const std::string& value) {
  if (value == "plain") return OutputFormat::plain;
  if (value == "json") return OutputFormat::json;
  if (value == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown format: " + value);
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Reads the positional argument if given, else one item per stdin line.
std::vector<std::string> collect_inputs(const CLI::Option* opt, const std::string& value,
                                        std::istream& in) {
  if (opt->count() > 0) return {value};
  std::vector<std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    items.push_back(line);
  }
  // Trailing newline tolerated: a final empty line is not an item.
  if (!items.empty() && items.back().empty()) items.pop_back();
  return items;
}

class PairPrinter {
 public:
  PairPrinter(std::ostream& out, OutputFormat format, std::string in_key, std::string out_key)
      : out_(out), format_(format), in_key_(std::move(in_key)), out_key_(std::move(out_key)) {}

  void row(const std::string& input, const std::string& output) {
    switch (format_) {
      case OutputFormat::plain:
        out_ << output << '\n';
        break;
      case OutputFormat::json:
        out_ << json{{in_key_, input}, {out_key_, output}}.dump() << '\n';
        break;
      case OutputFormat::csv:
        if (!header_done_) out_ << in_key_ << ',' << out_key_ << '\n';
        header_done_ = true;
        out_ << csv_field(input) << ',' << csv_field(output) << '\n';
        break;
    }
  }

 private:
  std::ostream& out_;
  OutputFormat format_;
  std::string in_key_, out_key_;
  bool header_done_ = false;
};

BigNat parse_positive(const std::string& text) {
  BigNat n = BigNat::from_decimal(trim(text));
  if (n.is_zero()) throw DomainError("expected a positive integer, got 0");
  return n;
}

std::uint64_t parse_machine_positive(const std::string& text) {
  const BigNat n = parse_positive(text);
  const auto v = n.try_u64();
  if (!v) throw CapacityError(text + " exceeds the machine-word range");
  return *v;
}

std::string render_tree(const RootedTree& t, PrimeBackend& primes) {
  const auto numbers = subtree_matula_numbers(t, primes);
  struct Item {
    std::size_t node;
    std::string prefix;
    bool last;
  };
  std::ostringstream os;
  os << "o " << numbers[0] << '\n';
  std::vector<Item> stack;
  auto push_children = [&](std::size_t node, const std::string& prefix) {
    const auto kids = t.child_offsets(node);
    for (std::size_t i = kids.size(); i-- > 0;) {
      stack.push_back({kids[i], prefix, i + 1 == kids.size()});
    }
  };
  push_children(0, "");
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    os << item.prefix << (item.last ? "`-- " : "|-- ") << "o " << numbers[item.node] << '\n';
    push_children(item.node, item.prefix + (item.last ? "    " : "|   "));
  }
  return os.str();
}

void print_records(const std::vector<CheckRecord>& records, OutputFormat format,
                   std::ostream& out) {
  switch (format) {
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& r : records) {
        arr.push_back({{"check", r.check},
                       {"limit", r.limit},
                       {"value", r.value},
                       {"value_decimal", r.value_decimal},
                       {"bound", r.bound},
                       {"pass", r.pass},
                       {"argmin_slack",
                        r.argmin_slack ? json(*r.argmin_slack) : json(nullptr)},
                       {"note", r.note}});
      }
      out << arr.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "check,limit,value,value_decimal,bound,pass,argmin_slack,note\n";
      for (const auto& r : records) {
        out << csv_field(r.check) << ',' << r.limit << ',' << csv_field(r.value) << ','
            << csv_field(r.value_decimal) << ',' << csv_field(r.bound) << ','
            << (r.pass ? "true" : "false") << ','
            << (r.argmin_slack ? std::to_string(*r.argmin_slack) : "") << ','
            << csv_field(r.note) << '\n';
      }
      break;
    case OutputFormat::plain:
      for (const auto& r : records) {
        out << (r.pass ? "PASS " : "FAIL ") << r.check << " limit=" << r.limit
            << " value=" << r.value;
        if (r.value_decimal != r.value) out << " (" << r.value_decimal << ")";
        out << " bound: " << r.bound;
        if (r.argmin_slack) out << " argmin=" << *r.argmin_slack;
        if (!r.note.empty()) out << " [" << r.note << "]";
        out << '\n';
      }
      break;
  }
}

int exit_code_for(const std::exception_ptr& ep, std::ostream& err) {
  try {
    std::rethrow_exception(ep);
  } catch (const ParseError& e) {
    err << "parse error at offset " << e.offset() << ": " << e.what() << '\n';
    return kExitParse;
  } catch (const IndexOverflow& e) {
    err << "index overflow: " << e.what() << '\n';
    return kExitIndexOverflow;
  } catch (const FactorizationFailure& e) {
    err << "factorization failure: " << e.what() << '\n';
    return kExitFactorization;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::bad_alloc&) {
    err << "capacity: out of memory\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace

CliConfig load_config(const std::string& path, CliConfig base) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open config file " + path);
  std::string line;
  while (std::getline(file, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config: expected key=value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "limit") {
      base.limit = parse_u64(key, value);
    } else if (key == "sieve-limit") {
      base.sieve_limit = parse_u64(key, value);
    } else if (key == "hard-ceiling") {
      base.hard_ceiling = parse_u64(key, value);
    } else if (key == "seed") {
      base.seed = parse_u64(key, value);
    } else if (key == "format") {
      base.format = parse_format(value);
    } else if (key == "strict") {
      if (value != "true" && value != "false") {
        throw std::invalid_argument("config: strict must be true or false");
      }
      base.strict = value == "true";
    } else {
      throw std::invalid_argument("config: unknown key " + key);
    }
  }
  return base;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& config_path) {
  CliConfig config;
  try {
    if (config_path) config = load_config(*config_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  CLI::App app{"Matula numbers: rooted-tree bijection, Dyck code and GIM function checks"};
  app.require_subcommand(1);
  app.fallthrough();

  const std::map<std::string, OutputFormat> formats{
      {"plain", OutputFormat::plain}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}};
  app.add_option("--limit", config.limit, "Range limit for table/verify");
  app.add_option("--sieve-limit", config.sieve_limit, "Initial prime sieve limit");
  app.add_option("--hard-ceiling", config.hard_ceiling, "Largest prime the backend may sieve to");
  app.add_option("--format", config.format, "Output format: plain, json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_flag("--strict,!--lenient", config.strict, "Reject non-canonical Dyck words (default)");
  app.add_option("--seed", config.seed, "Seed for sampled checks");

  std::string encode_arg, decode_arg, g_arg, big_g_arg, table_arg, tree_arg, suite_arg;
  auto* encode_cmd = app.add_subcommand("encode", "Print the Dyck codeword of n");
  auto* encode_opt = encode_cmd->add_option("n", encode_arg, "Positive integer (stdin if omitted)");
  auto* decode_cmd = app.add_subcommand("decode", "Print the number of a Dyck word");
  auto* decode_opt = decode_cmd->add_option("word", decode_arg, "Dyck word (stdin if omitted)");
  auto* g_cmd = app.add_subcommand("g", "Print g(n), the edge count of tau(n)");
  auto* g_opt = g_cmd->add_option("n", g_arg, "Positive integer (stdin if omitted)");
  auto* big_g_cmd = app.add_subcommand("G", "Print G(n) = g(1) + ... + g(n)");
  big_g_cmd->add_option("n", big_g_arg, "Positive integer")->required();
  auto* table_cmd = app.add_subcommand("table", "CSV table n,g,G,lower,upper,floor");
  auto* table_opt = table_cmd->add_option("limit", table_arg, "Last row (default --limit)");
  auto* tree_cmd = app.add_subcommand("tree", "Render tau(n) with its codeword");
  tree_cmd->add_option("n", tree_arg, "Positive integer")->required();
  auto* verify_cmd = app.add_subcommand("verify", "Run verification checks");
  const std::map<std::string, Suite> suites{{"kraft-primes", Suite::kraft_primes},
                                            {"kraft-naturals", Suite::kraft_naturals},
                                            {"bounds", Suite::bounds},
                                            {"conclusion3", Suite::conclusion3},
                                            {"shannon", Suite::shannon},
                                            {"all", Suite::all}};
  verify_cmd->add_option("suite", suite_arg, "kraft-primes|kraft-naturals|bounds|conclusion3|shannon|all")
      ->required()
      ->check(CLI::IsMember(suites));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    PrimeBackend primes(PrimeBackendConfig{config.sieve_limit, config.hard_ceiling});

    if (*encode_cmd) {
      PairPrinter printer(out, config.format, "n", "codeword");
      for (const auto& item : collect_inputs(encode_opt, encode_arg, in)) {
        printer.row(trim(item), encode(parse_positive(item), primes).str());
      }
    } else if (*decode_cmd) {
      PairPrinter printer(out, config.format, "word", "n");
      for (const auto& item : collect_inputs(decode_opt, decode_arg, in)) {
        printer.row(item, decode(item, config.strict, primes).to_string());
      }
    } else if (*g_cmd) {
      Gim g(primes);
      PairPrinter printer(out, config.format, "n", "g");
      for (const auto& item : collect_inputs(g_opt, g_arg, in)) {
        printer.row(trim(item), std::to_string(g(parse_positive(item))));
      }
    } else if (*big_g_cmd) {
      const std::uint64_t n = parse_machine_positive(big_g_arg);
      PairPrinter(out, config.format, "n", "G").row(std::to_string(n), std::to_string(big_g(n)));
    } else if (*table_cmd) {
      const std::uint64_t limit =
          table_opt->count() > 0 ? parse_machine_positive(table_arg) : config.limit;
      if (limit < 1) throw DomainError("table limit must be >= 1");
      const GimTable table = g_table(limit);
      std::uint64_t cumulative = 0;
      json rows = json::array();
      const bool as_json = config.format == OutputFormat::json;
      if (!as_json) out << "n,g,G,lower,upper,floor\n";
      for (std::uint64_t n = 1; n <= limit; ++n) {
        const std::uint64_t g = table.g_values[n];
        cumulative += g;
        const std::string lower = n >= 7 ? shortest(lower_bound(n)) : "";
        const std::string upper = n >= 7 ? shortest(upper_bound(n)) : "";
        const std::string floor = shortest(shannon_floor(n));
        if (as_json) {
          rows.push_back({{"n", n},
                          {"g", g},
                          {"G", cumulative},
                          {"lower", n >= 7 ? json(lower_bound(n)) : json(nullptr)},
                          {"upper", n >= 7 ? json(upper_bound(n)) : json(nullptr)},
                          {"floor", shannon_floor(n)}});
        } else {
          out << n << ',' << g << ',' << cumulative << ',' << lower << ',' << upper << ','
              << floor << '\n';
        }
      }
      if (as_json) out << rows.dump(2) << '\n';
    } else if (*tree_cmd) {
      const BigNat n = parse_positive(tree_arg);
      const RootedTree t = tau(n, primes);
      const std::string rendering = render_tree(t, primes);
      const std::string word = tree_to_dyck(t).str();
      if (config.format == OutputFormat::json) {
        out << json{{"n", n.to_string()},
                    {"dyck", word},
                    {"edges", t.edge_count()},
                    {"rendering", rendering}}
                   .dump(2)
            << '\n';
      } else {
        out << rendering << "dyck: " << word << '\n' << "edges: " << t.edge_count() << '\n';
      }
    } else if (*verify_cmd) {
      SuiteOptions options;
      options.limit = config.limit;
      options.seed = config.seed;
      const auto records = run_suite(suites.at(suite_arg), options);
      print_records(records, config.format, out);
      const bool all_pass =
          std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
      return all_pass ? kExitOk : kExitCheckFailed;
    }
  } catch (...) {
    out.flush();
    return exit_code_for(std::current_exception(), err);
  }
  return kExitOk;
}

}  // namespace matula::cli
