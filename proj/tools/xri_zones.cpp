#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "xri/bus/message_bus.hpp"
#include "xri/core/error.hpp"
#include "xri/scenario/repl.hpp"
#include "xri/scenario/runtime.hpp"
#include "xri/scenario/trace.hpp"
#include "xri/taxonomy/taxonomy.hpp"

namespace fs = std::filesystem;
using namespace xri;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitMismatch = 2;

std::atomic<bool> g_stop{false};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, path.string(), "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Returns false after reporting every violation.
bool check_layout(const SpaceLayout& layout) {
  const auto violations = validate_layout(layout);
  for (const auto& v : violations) std::cerr << "layout: " << v.code << " " << v.subject << ": " << v.message << "\n";
  return violations.empty();
}

std::optional<std::string> broker_choice(const std::string& flag) {
  if (!flag.empty()) return flag;
  return bus::broker_url_from_env();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, path, "cannot write file");
  out << text;
}

void print_divergence(const scenario::Divergence& d) {
  std::cout << "first divergence: seq=" << d.seq << " field=" << d.path << " at " << d.pointer << "\n";
}

int cmd_run(const std::string& layout_path, const std::string& script_path, const std::string& trace_out,
            const std::string& expect, const std::string& broker) {
  const std::string script_bytes = read_file(script_path);
  fs::path lp = layout_path;
  if (lp.empty()) {
    auto ref = scenario::peek_layout_ref(script_bytes);
    if (!ref) {
      std::cerr << "error: no --layout given and the script names no layout\n";
      return kExitInvalid;
    }
    lp = fs::path(script_path).parent_path() / *ref;
  }
  SpaceLayout layout = load_layout(lp);
  if (!check_layout(layout)) return kExitInvalid;

  scenario::ScenarioScript script;
  try {
    script = scenario::load_script(script_bytes, layout);
  } catch (const scenario::ScriptError& e) {
    for (const auto& i : e.issues()) {
      std::cerr << script_path << ":" << i.line << ": " << to_string(i.code);
      if (i.step) std::cerr << " (step " << i.step << ")";
      std::cerr << ": " << i.message << "\n";
    }
    return kExitInvalid;
  }
  layout = apply_overrides(std::move(layout), script.overrides);
  if (!check_layout(layout)) return kExitInvalid;

  auto bus_url = broker_choice(broker);
  std::unique_ptr<bus::MessageBus> bus;
  if (bus_url) bus = bus::make_bus(bus_url);
  const auto trace = scenario::run_scenario(script, layout, bus.get());
  const std::string jsonl = scenario::trace_to_jsonl(trace);
  if (!trace_out.empty()) write_text(trace_out, jsonl);

  if (!expect.empty()) {
    const auto golden = scenario::parse_trace(read_file(expect));
    if (auto d = scenario::diff_traces(golden, scenario::parse_trace(jsonl))) {
      print_divergence(*d);
      return kExitMismatch;
    }
    std::cout << "trace matches " << expect << " (" << trace.size() << " entries)\n";
  } else if (trace_out.empty()) {
    std::cout << jsonl;
  }
  return kExitOk;
}

int cmd_repl(const std::string& layout_path, bool realtime, const std::string& broker, const std::string& trace_out) {
  SpaceLayout layout = load_layout(layout_path);
  if (!check_layout(layout)) return kExitInvalid;
  auto bus_url = broker_choice(broker);
  std::unique_ptr<bus::MessageBus> bus;
  if (bus_url) bus = bus::make_bus(bus_url);
  scenario::Runtime rt(std::move(layout), bus.get());
  scenario::ReplOptions options;
  options.realtime = realtime;
  options.prompt = isatty(STDIN_FILENO) != 0;
  const int status = scenario::interactive_repl(rt, std::cin, std::cout, options);
  if (!trace_out.empty()) write_text(trace_out, scenario::trace_to_jsonl(rt.trace()));
  return status;
}

int cmd_serve(const std::string& layout_path, const std::string& broker, int http_port, const std::string& http_host) {
  SpaceLayout layout = load_layout(layout_path);
  if (!check_layout(layout)) return kExitInvalid;
  auto bus_url = broker_choice(broker);
  if (!bus_url) {
    std::cerr << "error: serve needs --broker or XRI_BROKER_URL\n";
    return kExitInvalid;
  }
  auto bus = bus::make_bus(bus_url);
  scenario::Runtime rt(std::move(layout), bus.get());
  std::signal(SIGINT, [](int) { g_stop = true; });
  std::signal(SIGTERM, [](int) { g_stop = true; });
  scenario::ServeOptions options;
  options.http_port = http_port;
  options.http_host = http_host;
  return scenario::serve(rt, options, g_stop, std::cerr);
}

int cmd_classify(double virtuality, double agency, double pr, const std::string& format) {
  const taxonomy::MiraCoordinates c(virtuality, agency, pr);
  const int index = taxonomy::classify_design(c);
  const auto& e = taxonomy::exemplar(index);
  if (format == "json") {
    nlohmann::json j = {{"index", index},
                        {"label", e.label},
                        {"squared_distance", taxonomy::squared_distance(c, e.centroid)}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << index << " " << e.label << "\n";
  }
  return kExitOk;
}

int cmd_diff(const std::string& a, const std::string& b) {
  const auto ta = scenario::parse_trace(read_file(a));
  const auto tb = scenario::parse_trace(read_file(b));
  if (auto d = scenario::diff_traces(ta, tb)) {
    print_divergence(*d);
    return kExitMismatch;
  }
  std::cout << "identical (" << ta.size() << " entries)\n";
  return kExitOk;
}

int cmd_validate(const std::string& layout_path, const std::string& trace_path) {
  SpaceLayout layout = load_layout(layout_path);
  if (!check_layout(layout)) return kExitInvalid;
  if (!trace_path.empty()) {
    const auto issues = scenario::validate_trace(scenario::parse_trace(read_file(trace_path)), layout);
    for (const auto& i : issues) std::cerr << "trace: seq " << i.seq << ": " << i.message << "\n";
    if (!issues.empty()) return kExitMismatch;
  }
  std::cout << "ok\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial zone agents for a shared physical-virtual room"};
  app.require_subcommand(1);

  std::string layout, script, trace_out, expect, broker, trace_in, format = "text", http_host = "0.0.0.0";
  std::string diff_a, diff_b;
  bool realtime = false;
  int http_port = 8080;
  double virtuality = 0, agency = 0, pr = 0;

  auto* run = app.add_subcommand("run", "Run a scenario script and emit its trace");
  run->add_option("--layout", layout, "Space layout JSON (defaults to the script's layout line)");
  run->add_option("--script", script, "Scenario script")->required();
  run->add_option("--trace", trace_out, "Write the JSONL trace here ('-' for stdout)");
  run->add_option("--expect", expect, "Golden trace to compare against");
  run->add_option("--broker", broker, "mqtt://host:port (default: XRI_BROKER_URL, else in-process)");

  auto* repl = app.add_subcommand("repl", "Drive the space interactively");
  repl->add_option("--layout", layout)->required();
  repl->add_flag("--realtime", realtime, "Tick on the wall clock");
  repl->add_option("--broker", broker);
  repl->add_option("--trace", trace_out, "Write the session trace on exit");

  auto* serve = app.add_subcommand("serve", "Headless runtime for bus peers");
  serve->add_option("--layout", layout)->required();
  serve->add_option("--broker", broker);
  serve->add_option("--http-port", http_port, "Port for GET /layout.json (0 disables)");
  serve->add_option("--http-host", http_host);

  auto* classify = app.add_subcommand("classify", "Nearest design exemplar for a point on the three axes");
  classify->add_option("--virtuality", virtuality)->required();
  classify->add_option("--agency", agency)->required();
  classify->add_option("--pr", pr, "Physical-virtual presence")->required();
  classify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* diff = app.add_subcommand("diff", "First divergence between two traces");
  diff->add_option("a", diff_a)->required();
  diff->add_option("b", diff_b)->required();

  auto* validate = app.add_subcommand("validate", "Check a layout and optionally a trace against it");
  validate->add_option("--layout", layout)->required();
  validate->add_option("--trace", trace_in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*run) return cmd_run(layout, script, trace_out, expect, broker);
    if (*repl) return cmd_repl(layout, realtime, broker, trace_out);
    if (*serve) return cmd_serve(layout, broker, http_port, http_host);
    if (*classify) return cmd_classify(virtuality, agency, pr, format);
    if (*diff) return cmd_diff(diff_a, diff_b);
    if (*validate) return cmd_validate(layout, trace_in);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
