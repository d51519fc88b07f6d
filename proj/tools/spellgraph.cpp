#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spellgraph/graph/graph_json.hpp"
#include "spellgraph/service/http_server.hpp"
#include "spellgraph/service/sample_fixtures.hpp"
#include "spellgraph/service/service.hpp"

namespace {

spellgraph::service::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int serve(spellgraph::service::ServiceConfig config) {
  auto service = spellgraph::service::Service::from_config(config);
  spellgraph::service::HttpServer server(*service);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "spellgraph: serving on " << config.host << ":" << config.port << " (provider "
            << spellgraph::gateway::to_string(config.provider) << ")\n";
  server.run(config.host, config.port);
  g_server = nullptr;
  return 0;
}

int validate(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << file << '\n';
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    const auto graph = spellgraph::deserialize(text.str(), "validate");
    std::cout << "ok: " << graph.nodes().size() << " nodes, " << graph.edges().size()
              << " edges\n";
    return 0;
  } catch (const spellgraph::SchemaError& e) {
    std::cout << "invalid: " << e.what() << '\n';
    return 1;
  }
}

int write_fixtures(const std::string& dir, const spellgraph::prompts::CodeDelimiters& delimiters) {
  spellgraph::gateway::MockProvider mock;
  const std::size_t n = spellgraph::service::register_sample_fixtures(mock, delimiters);
  mock.write_fixture_dir(dir);
  std::cout << "wrote " << n << " fixtures to " << dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branching sketch exploration service"};
  app.require_subcommand(1);

  spellgraph::service::ServiceConfig config;
  std::string provider = "mock";
  std::string data_dir = config.data_dir.string();
  std::string fixtures_dir;

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", config.port, "Port to listen on")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", config.host, "Address to bind");
  serve_cmd->add_option("--data-dir", data_dir, "Directory holding graphs/<id>.json");
  serve_cmd->add_option("--provider", provider, "Completion provider")
      ->check(CLI::IsMember({"mock", "remote"}));
  serve_cmd->add_option("--max-in-flight", config.max_in_flight, "Concurrent model calls")
      ->check(CLI::PositiveNumber);
  serve_cmd->add_option("--workers", config.workers, "Operator job threads")
      ->check(CLI::PositiveNumber);
  serve_cmd->add_option("--fixtures", fixtures_dir, "Extra mock fixtures directory");
  serve_cmd->add_option("--start-token", config.delimiters.start_token, "Code start marker");
  serve_cmd->add_option("--end-token", config.delimiters.end_token, "Code end marker");

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a graph document");
  validate_cmd->add_option("file", file, "Graph JSON file")->required();

  std::string out_dir = "fixtures";
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Write the built-in mock fixtures");
  fixtures_cmd->add_option("--out", out_dir, "Target directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) {
      config.provider = *spellgraph::gateway::parse_provider_kind(provider);
      config.data_dir = data_dir;
      if (!fixtures_dir.empty()) config.fixtures_dir = fixtures_dir;
      return serve(config);
    }
    if (*validate_cmd) return validate(file);
    if (*fixtures_cmd) return write_fixtures(out_dir, config.delimiters);
  } catch (const std::exception& e) {
    std::cerr << "spellgraph: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
