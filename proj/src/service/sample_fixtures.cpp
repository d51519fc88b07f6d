#include "spellgraph/service/sample_fixtures.hpp"

#include <json.hpp>

#include "spellgraph/postprocess/postprocess.hpp"

namespace spellgraph::service {

namespace {

using prompts::Route;

constexpr std::string_view kMountainMap =
    R"({"phrases":[{"text":"Perlin noise","variables":["noiseStrength"]},)"
    R"({"text":"each circle","variables":["numCircles","circleSize"]},)"
    R"({"text":"mountain range","variables":["noiseStrength"]}]})";

constexpr std::string_view kMountainBody = R"(let numCircles = 20;
let circleSize = 40;
let noiseStrength = 0.6;
let circles = [];
function setup() {
  createCanvas(700, 410);
  for (let i = 0; i < numCircles; i++) {
    circles.push({ x: random(width), y: random(height), seed: random(1000) });
  }
}
function draw() {
  background(0);
  noFill();
  stroke(255);
  for (const c of circles) {
    beginShape();
    for (let a = 0; a < TWO_PI; a += 0.1) {
      const n = noise(c.seed + cos(a), c.seed + sin(a));
      const r = circleSize * (1 + noiseStrength * (n - 0.5));
      vertex(c.x + r * cos(a), c.y + r * sin(a));
    }
    endShape(CLOSE);
  }
})";

constexpr std::string_view kSampleDiff =
    "Sketch 2 replaces the single square of Sketch 1 with twenty circles that start at random "
    "positions and bounce off the edges of the canvas.";

std::string wrap(std::string_view body, const prompts::CodeDelimiters& d) {
  return d.start_line() + "\n" + std::string(body) + "\n" + d.end_line();
}

void add(gateway::MockProvider& mock, const prompts::PromptBundle& bundle, std::string text,
         std::size_t& count) {
  const std::string digest = gateway::message_digest(bundle);
  if (mock.has_fixture(bundle.route, digest)) return;
  mock.register_fixture(bundle.route, digest, std::move(text));
  ++count;
}

}  // namespace

SampleSession sample_session(const prompts::CodeDelimiters& delimiters) {
  SampleSession session;
  const auto modify = prompts::few_shot_context(Route::modify, delimiters);
  const auto variation = nlohmann::json::parse(modify.at(0).content);
  session.root_code = variation.at("code").get<std::string>();
  session.modify_prompt = variation.at("variationPrompt").get<std::string>();

  const auto merge = prompts::few_shot_context(Route::merge, delimiters);
  const auto snippets = nlohmann::json::parse(merge.at(0).content);
  session.merge_first = snippets.at("firstCode").get<std::string>();
  session.merge_second = snippets.at("secondCode").get<std::string>();
  return session;
}

std::size_t register_sample_fixtures(gateway::MockProvider& mock,
                                     const prompts::CodeDelimiters& delimiters) {
  const SampleSession session = sample_session(delimiters);
  std::size_t count = 0;

  const auto modify = prompts::few_shot_context(Route::modify, delimiters);
  const std::string& modified_reply = modify.at(1).content;
  add(mock, prompts::compose_modify(session.root_code, session.modify_prompt, delimiters),
      modified_reply, count);
  const std::string modified_code = postprocess::extract_code(modified_reply, delimiters).code;

  const auto merge = prompts::few_shot_context(Route::merge, delimiters);
  add(mock,
      prompts::compose_merge(session.merge_first, session.merge_second, std::nullopt, delimiters),
      merge.at(1).content, count);

  const auto autocomplete = prompts::few_shot_context(Route::autocomplete, delimiters);
  for (std::size_t i = 0; i + 1 < autocomplete.size(); i += 2) {
    if (autocomplete[i].content != session.autocomplete_partial) continue;
    for (const std::string* code : {&session.root_code, &modified_code}) {
      add(mock, prompts::compose_autocomplete(session.autocomplete_partial, *code),
          autocomplete[i + 1].content, count);
    }
  }

  add(mock, prompts::compose_diff(session.root_code, modified_code), std::string(kSampleDiff),
      count);

  const std::string map(kMountainMap);
  const auto phase1 =
      prompts::compose_semantic_pipeline(session.semantic_prompt, modified_code,
                                         prompts::kSemanticMapPlaceholder, delimiters)
          .first;
  add(mock, phase1, map, count);
  const auto phase2 =
      prompts::compose_semantic_pipeline(session.semantic_prompt, modified_code, map, delimiters)
          .second;
  add(mock, phase2, wrap(kMountainBody, delimiters), count);
  return count;
}

}  // namespace spellgraph::service
