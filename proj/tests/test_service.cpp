#include <doctest.h>

#include <atomic>
#include <thread>

#include "spellgraph/postprocess/postprocess.hpp"
#include "spellgraph/prompts/prompts.hpp"
#include "spellgraph/service/sample_fixtures.hpp"
#include "spellgraph/service/service.hpp"
#include "support/gated_provider.hpp"
#include "support/goldens.hpp"

using namespace spellgraph;
using namespace spellgraph::service;
using gateway::MockProvider;
using prompts::Route;

namespace {

ServiceConfig memory_config() {
  ServiceConfig c;
  c.data_dir.clear();
  return c;
}

struct Harness {
  std::shared_ptr<MockProvider> mock = std::make_shared<MockProvider>();
  std::unique_ptr<Service> service;
  SampleSession session = sample_session();

  explicit Harness(std::shared_ptr<gateway::CompletionProvider> provider = nullptr,
                   ServiceConfig config = memory_config()) {
    register_sample_fixtures(*mock);
    auto gw = std::make_shared<gateway::Gateway>(provider ? provider : mock, config.max_in_flight);
    service = std::make_unique<Service>(config, gw);
  }

  std::pair<std::string, NodeId> graph_with(const std::string& code) {
    const CreatedGraph g = service->create_graph(code);
    return {g.graph_id, *g.root};
  }
  ExplorationGraph graph(const std::string& id) { return service->snapshot(id); }
};

int status_of(auto&& f) {
  try {
    f();
  } catch (const ApiError& e) {
    return e.status();
  }
  return 0;
}

std::string code_of(auto&& f) {
  try {
    f();
  } catch (const ApiError& e) {
    return e.code();
  }
  return "";
}

std::string modified_code() {
  return postprocess::extract_code(testing::golden_context(Route::modify)[1].content).code;
}

}  // namespace

TEST_CASE("modify runs as a job and attaches the generated sketch") {
  Harness h;
  const auto [gid, root] = h.graph_with(h.session.root_code);
  const OperatorJob queued = h.service->modify(gid, root, h.session.modify_prompt);
  CHECK_FALSE(queued.finished());
  CHECK(h.graph(gid).operator_node(queued.operator_id).prompt == h.session.modify_prompt);

  const OperatorJob done = h.service->wait(queued.job_id);
  REQUIRE(done.state == JobState::done);
  REQUIRE(done.sketch_id);
  const ExplorationGraph g = h.graph(gid);
  CHECK(g.sketch(*done.sketch_id).source_code == modified_code());
  CHECK(g.sketch(*done.sketch_id).source_node == root);
  CHECK(g.operator_node(done.operator_id).run_state.status == RunStatus::succeeded);
  CHECK(g.sketch(root).source_code == h.session.root_code);
  CHECK(g.validate().empty());

  const auto json = to_json(done);
  CHECK(json["state"] == "done");
  CHECK(json["sketch"] == done.sketch_id->str());
  CHECK(json.contains("finishedAt"));
  CHECK_FALSE(json.contains("error"));
}

TEST_CASE("a failed completion fails the operator, not the graph") {
  Harness h;
  const auto [gid, root] = h.graph_with("let unknown = 1;");
  const OperatorJob job = h.service->wait(h.service->modify(gid, root, "make it blue").job_id);
  CHECK(job.state == JobState::failed);
  CHECK(job.error.starts_with("NoFixture"));
  CHECK_FALSE(job.sketch_id);
  const ExplorationGraph g = h.graph(gid);
  const OperatorNode& op = g.operator_node(job.operator_id);
  CHECK(op.run_state.status == RunStatus::failed);
  CHECK(op.run_state.error == job.error);
  CHECK(g.children(job.operator_id).empty());
  CHECK(g.validate().empty());
  CHECK(to_json(job)["error"] == job.error);
}

TEST_CASE("replies without code fail the operator") {
  Harness h;
  const auto [gid, root] = h.graph_with("let x = 1;");
  h.mock->register_response(prompts::compose_modify("let x = 1;", "chat"), "Sure! What colour?");
  const OperatorJob job = h.service->wait(h.service->modify(gid, root, "chat").job_id);
  CHECK(job.state == JobState::failed);
  CHECK(job.error.starts_with("NoCodeFound"));
}

TEST_CASE("fallback extraction warnings reach the job") {
  Harness h;
  const auto [gid, root] = h.graph_with("let x = 1;");
  h.mock->register_response(prompts::compose_modify("let x = 1;", "fence it"),
                            "```js\nfunction setup() {}\n```");
  const OperatorJob job = h.service->wait(h.service->modify(gid, root, "fence it").job_id);
  REQUIRE(job.state == JobState::done);
  CHECK(h.graph(gid).sketch(*job.sketch_id).source_code == "function setup() {}");
  CHECK(job.result["warnings"].size() >= 1);
}

TEST_CASE("deleting an operator while its job runs fails the job") {
  auto mock = std::make_shared<MockProvider>();
  auto gated = std::make_shared<testing::GatedProvider>(mock);
  Harness h(gated);
  register_sample_fixtures(*mock);
  const auto [gid, root] = h.graph_with(h.session.root_code);
  const OperatorJob queued = h.service->modify(gid, root, h.session.modify_prompt);
  gated->await_waiting(1);
  h.service->delete_node(gid, queued.operator_id);
  gated->open();
  const OperatorJob job = h.service->wait(queued.job_id);
  CHECK(job.state == JobState::failed);
  CHECK(job.error == "operator was deleted while the job ran");
  const ExplorationGraph g = h.graph(gid);
  CHECK(g.nodes().size() == 1);
  CHECK(g.validate().empty());
}

TEST_CASE("local routes never call the model") {
  Harness h;
  const auto [gid, root] = h.graph_with("let size = 10;\nfunction setup() {}");
  const DuplicateResult dup = h.service->duplicate(gid, root);
  CHECK(h.graph(gid).sketch(dup.sketch_id).source_code == "let size = 10;\nfunction setup() {}");
  CHECK(h.graph(gid).operator_node(dup.operator_id).kind == OperatorKind::duplicate);
  CHECK(h.service->patch_global(gid, dup.sketch_id, "size", 25).empty());
  CHECK(h.graph(gid).sketch(dup.sketch_id).source_code == "let size = 25;\nfunction setup() {}");
  CHECK(h.service->patch_code(gid, root, "let size = 11;") == std::set{dup.operator_id, dup.sketch_id});
  h.service->delete_node(gid, dup.sketch_id);
  CHECK(h.mock->call_count() == 0);
  CHECK(h.graph(gid).validate().empty());
}

TEST_CASE("slider patches") {
  Harness h;
  const auto [gid, root] = h.graph_with("let n = 5;\nlet s = 'x';");
  const DuplicateResult dup = h.service->duplicate(gid, root);

  SUBCASE("an unchanged value leaves the graph alone") {
    CHECK(h.service->patch_global(gid, root, "n", 5).empty());
    CHECK(h.graph(gid).stale().empty());
  }
  SUBCASE("a new value marks everything below stale") {
    CHECK(h.service->patch_global(gid, root, "n", 7.5) == std::set{dup.operator_id, dup.sketch_id});
    CHECK(h.graph(gid).sketch(root).source_code == "let n = 7.5;\nlet s = 'x';");
  }
  SUBCASE("unknown and non-numeric globals") {
    CHECK(code_of([&] { h.service->patch_global(gid, root, "s", 1); }) == "UnknownVariable");
    CHECK(status_of([&] { h.service->patch_global(gid, root, "ghost", 1); }) == 400);
  }
}

TEST_CASE("merge recovers the merge prompt as the annotation") {
  Harness h;
  const auto [gid, first] = h.graph_with(h.session.merge_first);
  const DuplicateResult dup = h.service->duplicate(gid, first);
  h.service->patch_code(gid, dup.sketch_id, h.session.merge_second);

  const OperatorJob job = h.service->wait(h.service->merge(gid, first, dup.sketch_id).job_id);
  REQUIRE(job.state == JobState::done);
  const ExplorationGraph g = h.graph(gid);
  const OperatorNode& op = g.operator_node(job.operator_id);
  REQUIRE(op.annotation);
  CHECK(op.annotation->starts_with("Combine the rotating line animation"));
  CHECK(g.parents(job.operator_id) == std::vector{first, dup.sketch_id});
  CHECK(g.sketch(*job.sketch_id).source_code.find("y = height / 2 + sin(x * 0.02) * 100;") !=
        std::string::npos);
  CHECK(g.validate().empty());

  CHECK(code_of([&] { h.service->merge(gid, first, first); }) == "SameNode");
}

TEST_CASE("diff stores prose on the operator") {
  Harness h;
  const auto [gid, root] = h.graph_with(h.session.root_code);
  const OperatorJob mod = h.service->wait(h.service->modify(gid, root, h.session.modify_prompt).job_id);
  const OperatorJob job = h.service->wait(h.service->diff(gid, root, *mod.sketch_id).job_id);
  REQUIRE(job.state == JobState::done);
  CHECK_FALSE(job.sketch_id);
  const ExplorationGraph g = h.graph(gid);
  CHECK(g.operator_node(job.operator_id).annotation->starts_with("Sketch 2 replaces"));
  CHECK(g.children(job.operator_id).empty());
  CHECK(g.validate().empty());
  CHECK(code_of([&] { h.service->diff(gid, root, root); }) == "SameNode");
}

TEST_CASE("extract") {
  Harness h;
  const auto [gid, root] = h.graph_with("let hue = 10;");
  h.mock->register_response(prompts::compose_extract("let hue = 10;", "just the colour"),
                            "//BEGIN-SKETCH\nlet hue = 10;\nfunction setup() {}\n//END-SKETCH");
  const OperatorJob job = h.service->wait(h.service->extract(gid, root, "just the colour").job_id);
  REQUIRE(job.state == JobState::done);
  CHECK(h.graph(gid).sketch(*job.sketch_id).source_code == "let hue = 10;\nfunction setup() {}");
  CHECK(h.graph(gid).operator_node(job.operator_id).kind == OperatorKind::extract);
}

TEST_CASE("semantic pipeline yields sliders for mapped globals") {
  Harness h;
  const auto [gid, root] = h.graph_with(modified_code());
  const OperatorJob job = h.service->wait(h.service->semantic(gid, root, h.session.semantic_prompt).job_id);
  REQUIRE(job.state == JobState::done);
  const auto& result = job.result;
  REQUIRE(result["map"].size() == 3);
  CHECK(result["map"][0]["phrase"] == "Perlin noise");
  CHECK(result["map"][1]["variables"] == nlohmann::ordered_json::array({"numCircles", "circleSize"}));

  std::map<std::string, double> globals;
  for (const auto& g : result["globals"]) globals[g["name"]] = g["value"];
  CHECK(globals == std::map<std::string, double>{{"numCircles", 20}, {"circleSize", 40}, {"noiseStrength", 0.6}});
  for (const auto& g : result["globals"]) {
    CHECK(g["min"] == 0);
    CHECK(g["max"] == 2 * g["value"].get<double>());
  }

  const NodeId sketch = *job.sketch_id;
  const auto stale = h.service->patch_global(gid, sketch, "noiseStrength", 0.9);
  CHECK(stale.empty());
  CHECK(h.graph(gid).sketch(sketch).source_code.find("let noiseStrength = 0.9;") != std::string::npos);
  CHECK(h.graph(gid).validate().empty());
}

TEST_CASE("rerun regenerates one layer") {
  Harness h;
  const auto [gid, root] = h.graph_with(h.session.root_code);
  const OperatorJob first = h.service->wait(h.service->modify(gid, root, h.session.modify_prompt).job_id);
  const DuplicateResult below = h.service->duplicate(gid, *first.sketch_id);
  h.service->patch_code(gid, *first.sketch_id, "let hand = 'edited';");
  CHECK(h.graph(gid).is_stale(below.operator_id));

  const OperatorJob again = h.service->wait(h.service->rerun(gid, first.operator_id).job_id);
  REQUIRE(again.state == JobState::done);
  CHECK(again.sketch_id == first.sketch_id);
  const ExplorationGraph g = h.graph(gid);
  CHECK(g.sketch(*first.sketch_id).source_code == modified_code());
  CHECK(g.stale() == std::set{below.operator_id, below.sketch_id});
  CHECK(g.sketch(below.sketch_id).source_code == modified_code());
  CHECK(g.nodes().size() == 5);

  SUBCASE("a duplicate reruns locally") {
    const std::size_t calls = h.mock->call_count();
    const OperatorJob dup = h.service->wait(h.service->rerun(gid, below.operator_id).job_id);
    CHECK(dup.state == JobState::done);
    CHECK(h.mock->call_count() == calls);
    CHECK(h.graph(gid).stale().empty());
  }
  SUBCASE("an operator that lost an input cannot rerun") {
    const auto [g2, a] = h.graph_with("let a = 1;");
    const DuplicateResult b = h.service->duplicate(g2, a);
    const OperatorJob m = h.service->wait(h.service->merge(g2, a, b.sketch_id).job_id);
    h.service->delete_node(g2, b.sketch_id);
    CHECK(code_of([&] { h.service->rerun(g2, m.operator_id); }) == "MissingInput");
  }
  SUBCASE("sketch ids are not operators") {
    CHECK(code_of([&] { h.service->rerun(gid, root); }) == "UnknownOperator");
  }
}

TEST_CASE("autocomplete") {
  Harness h;
  const auto [gid, root] = h.graph_with(h.session.root_code);
  CHECK(h.service->autocomplete(gid, root, "make it more") ==
        std::vector<std::string>{"colorful", "sporadic and physical", "like a surreal drawing"});
  CHECK(status_of([&] { h.service->autocomplete(gid, root, "unseen"); }) == 502);
  h.mock->register_response(prompts::compose_autocomplete("chatty", h.session.root_code), "no list");
  CHECK(h.service->autocomplete(gid, root, "chatty").empty());
}

TEST_CASE("request errors") {
  Harness h;
  const auto [gid, root] = h.graph_with("let x = 1;");
  const NodeId ghost = NodeId::parse("zzzzzz");
  CHECK(code_of([&] { h.service->snapshot("nope"); }) == "UnknownGraph");
  CHECK(status_of([&] { h.service->modify("nope", root, "p"); }) == 404);
  CHECK(code_of([&] { h.service->modify(gid, ghost, "p"); }) == "UnknownNode");
  CHECK(code_of([&] { h.service->modify(gid, root, "  "); }) == "EmptyPrompt");
  CHECK(code_of([&] { h.service->extract(gid, root, ""); }) == "EmptyPrompt");
  CHECK(code_of([&] { h.service->add_root(gid, "let y = 2;"); }) == "RootExists");
  CHECK(status_of([&] { h.service->add_root(gid, "let y = 2;"); }) == 409);
  CHECK(code_of([&] { h.service->delete_node(gid, root); }) == "CannotDeleteRoot");
  CHECK(code_of([&] { h.service->job("job-999"); }) == "UnknownJob");
  CHECK(code_of([&] { h.service->create_graph(std::string(" ")); }) == "EmptyInput");
  CHECK(h.graph(gid).nodes().size() == 1);
}

TEST_CASE("graphs can start empty") {
  Harness h;
  const CreatedGraph g = h.service->create_graph();
  CHECK_FALSE(g.root);
  CHECK(h.service->graph_document(g.graph_id)["nodes"].empty());
  const NodeId root = h.service->add_root(g.graph_id, "let x = 1;");
  CHECK(h.graph(g.graph_id).root() == root);
  const auto ids = h.service->graph_ids();
  CHECK(std::find(ids.begin(), ids.end(), g.graph_id) != ids.end());
}

TEST_CASE("concurrent modifies against one graph") {
  auto mock = std::make_shared<MockProvider>();
  auto gated = std::make_shared<testing::GatedProvider>(mock);
  ServiceConfig config = memory_config();
  config.workers = 8;
  config.max_in_flight = 8;
  Harness h(gated, config);
  const auto [gid, root] = h.graph_with("let base = 1;");
  for (int i = 0; i < 8; ++i) {
    mock->register_response(prompts::compose_modify("let base = 1;", "variant " + std::to_string(i)),
                            "//BEGIN-SKETCH\nlet v = " + std::to_string(i) + ";\n//END-SKETCH");
  }

  std::atomic<bool> stop{false};
  std::atomic<int> torn{0};
  std::thread reader([&] {
    while (!stop) {
      if (!h.graph(gid).validate().empty()) ++torn;
    }
  });

  std::vector<std::string> jobs(8);
  std::vector<std::thread> clients;
  for (int i = 0; i < 8; ++i) {
    clients.emplace_back([&, i] { jobs[i] = h.service->modify(gid, root, "variant " + std::to_string(i)).job_id; });
  }
  for (auto& t : clients) t.join();
  gated->await_waiting(8);
  gated->open();
  std::set<std::string> codes;
  for (const std::string& id : jobs) {
    const OperatorJob j = h.service->wait(id);
    REQUIRE(j.state == JobState::done);
    codes.insert(h.graph(gid).sketch(*j.sketch_id).source_code);
  }
  stop = true;
  reader.join();

  const ExplorationGraph g = h.graph(gid);
  CHECK(g.nodes().size() == 17);
  CHECK(g.children(root).size() == 8);
  CHECK(codes.size() == 8);
  CHECK(g.validate().empty());
  CHECK(torn == 0);
  CHECK(h.service->gateway().peak_in_flight() == 8);
}

TEST_CASE("the gateway bound holds under load") {
  auto mock = std::make_shared<MockProvider>();
  auto gated = std::make_shared<testing::GatedProvider>(mock);
  ServiceConfig config = memory_config();
  config.workers = 6;
  config.max_in_flight = 2;
  Harness h(gated, config);
  const auto [gid, root] = h.graph_with("let base = 1;");
  std::vector<std::string> jobs;
  for (int i = 0; i < 6; ++i) {
    const std::string p = "load " + std::to_string(i);
    mock->register_response(prompts::compose_modify("let base = 1;", p), "//BEGIN-SKETCH\nx();\n//END-SKETCH");
    jobs.push_back(h.service->modify(gid, root, p).job_id);
  }
  gated->await_waiting(2);
  gated->open();
  for (const std::string& id : jobs) CHECK(h.service->wait(id).state == JobState::done);
  CHECK(h.service->gateway().peak_in_flight() == 2);
}
