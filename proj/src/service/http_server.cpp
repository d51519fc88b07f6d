#include "spellgraph/service/http_server.hpp"

#include <httplib.h>

#include <cmath>
#include <stdexcept>

#include "spellgraph/graph/graph_json.hpp"

namespace spellgraph::service {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void send(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(-1, ' ', false, json::error_handler_t::replace), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, std::string_view message) {
  send(res, status, ordered_json{{"error", code}, {"message", message}});
}

json body_of(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json doc = json::parse(req.body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ApiError(400, "BadRequest", "request body must be a JSON object");
  }
  return doc;
}

std::string text_field(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw ApiError(400, "BadRequest", std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_text(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ApiError(400, "BadRequest", std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

NodeId node_param(const httplib::Request& req, const char* key) {
  const std::string& text = req.path_params.at(key);
  if (!NodeId::is_valid(text)) throw ApiError(404, "UnknownNode", "no node '" + text + "'");
  return NodeId::parse(text);
}

NodeId node_field(const json& body, const char* key) {
  const std::string text = text_field(body, key);
  if (!NodeId::is_valid(text)) throw ApiError(404, "UnknownNode", "no node '" + text + "'");
  return NodeId::parse(text);
}

ordered_json ids_json(const std::set<NodeId>& ids) {
  ordered_json out = ordered_json::array();
  for (const NodeId& id : ids) out.push_back(id.str());
  return out;
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

Handler wrap(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const ApiError& e) {
      send_error(res, e.status(), e.code(), e.what());
    } catch (const SchemaError& e) {
      send_error(res, 500, "SchemaError", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "InternalError", e.what());
    }
  };
}

}  // namespace

HttpServer::HttpServer(Service& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

HttpServer::~HttpServer() { stop(); }

void HttpServer::install_routes() {
  httplib::Server& s = *server_;
  Service& svc = service_;

  auto job_reply = [](httplib::Response& res, const OperatorJob& job) {
    send(res, 202, to_json(job));
  };

  s.Post("/graphs", wrap([&svc](const httplib::Request& req, httplib::Response& res) {
    const CreatedGraph created = svc.create_graph(optional_text(body_of(req), "code"));
    ordered_json out{{"id", created.graph_id}};
    if (created.root) out["root"] = created.root->str();
    send(res, 201, out);
  }));

  s.Get("/graphs", wrap([&svc](const httplib::Request&, httplib::Response& res) {
    ordered_json ids = ordered_json::array();
    for (const std::string& id : svc.graph_ids()) ids.push_back(id);
    send(res, 200, ordered_json{{"graphs", ids}});
  }));

  s.Get("/graphs/:g", wrap([&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, 200, svc.graph_document(req.path_params.at("g")));
  }));

  s.Post("/graphs/:g/root", wrap([&svc](const httplib::Request& req, httplib::Response& res) {
    const NodeId root = svc.add_root(req.path_params.at("g"), text_field(body_of(req), "code"));
    send(res, 201, ordered_json{{"root", root.str()}});
  }));

  s.Post("/graphs/:g/sketches/:s/modify",
         wrap([&svc, job_reply](const httplib::Request& req, httplib::Response& res) {
           job_reply(res, svc.modify(req.path_params.at("g"), node_param(req, "s"),
                                     text_field(body_of(req), "prompt")));
         }));

  s.Post("/graphs/:g/merge",
         wrap([&svc, job_reply](const httplib::Request& req, httplib::Response& res) {
           const json body = body_of(req);
           job_reply(res, svc.merge(req.path_params.at("g"), node_field(body, "first"),
                                    node_field(body, "second"), optional_text(body, "prompt")));
         }));

  s.Post("/graphs/:g/sketches/:s/extract",
         wrap([&svc, job_reply](const httplib::Request& req, httplib::Response& res) {
           job_reply(res, svc.extract(req.path_params.at("g"), node_param(req, "s"),
                                      text_field(body_of(req), "prompt")));
         }));

  s.Post("/graphs/:g/diff",
         wrap([&svc, job_reply](const httplib::Request& req, httplib::Response& res) {
           const json body = body_of(req);
           job_reply(res, svc.diff(req.path_params.at("g"), node_field(body, "first"),
                                   node_field(body, "second")));
         }));

  s.Post("/graphs/:g/sketches/:s/semantic",
         wrap([&svc, job_reply](const httplib::Request& req, httplib::Response& res) {
           job_reply(res, svc.semantic(req.path_params.at("g"), node_param(req, "s"),
                                       text_field(body_of(req), "prompt")));
         }));

  s.Post("/graphs/:g/operators/:o/rerun",
         wrap([&svc, job_reply](const httplib::Request& req, httplib::Response& res) {
           job_reply(res, svc.rerun(req.path_params.at("g"), node_param(req, "o")));
         }));

  s.Post("/graphs/:g/sketches/:s/duplicate",
         wrap([&svc](const httplib::Request& req, httplib::Response& res) {
           const DuplicateResult r = svc.duplicate(req.path_params.at("g"), node_param(req, "s"));
           send(res, 201,
                ordered_json{{"operator", r.operator_id.str()}, {"sketch", r.sketch_id.str()}});
         }));

  s.Post("/graphs/:g/sketches/:s/autocomplete",
         wrap([&svc](const httplib::Request& req, httplib::Response& res) {
           const json body = body_of(req);
           const std::string partial = optional_text(body, "partial").value_or("");
           ordered_json list = ordered_json::array();
           for (const std::string& s :
                svc.autocomplete(req.path_params.at("g"), node_param(req, "s"), partial)) {
             list.push_back(s);
           }
           send(res, 200, ordered_json{{"suggestions", list}});
         }));

  s.Patch("/graphs/:g/sketches/:s/code",
          wrap([&svc](const httplib::Request& req, httplib::Response& res) {
            const auto stale = svc.patch_code(req.path_params.at("g"), node_param(req, "s"),
                                              text_field(body_of(req), "code"));
            send(res, 200, ordered_json{{"stale", ids_json(stale)}});
          }));

  s.Patch("/graphs/:g/sketches/:s/global",
          wrap([&svc](const httplib::Request& req, httplib::Response& res) {
            const json body = body_of(req);
            const auto value = body.find("value");
            if (value == body.end() || !value->is_number() ||
                !std::isfinite(value->get<double>())) {
              throw ApiError(400, "BadRequest", "missing numeric field 'value'");
            }
            const auto stale = svc.patch_global(req.path_params.at("g"), node_param(req, "s"),
                                                text_field(body, "name"), value->get<double>());
            send(res, 200, ordered_json{{"stale", ids_json(stale)}});
          }));

  s.Delete("/graphs/:g/nodes/:n", wrap([&svc](const httplib::Request& req, httplib::Response& res) {
    const std::string graph = req.path_params.at("g");
    svc.delete_node(graph, node_param(req, "n"));
    send(res, 200, svc.graph_document(graph));
  }));

  s.Get("/jobs/:j", wrap([&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, 200, to_json(svc.job(req.path_params.at("j"))));
  }));

  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send_error(res, res.status, "NotFound", "no such route");
  });
}

int HttpServer::start(const std::string& host, int port) {
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (port_ <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void HttpServer::run(const std::string& host, int port) {
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (port_ <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  server_->listen_after_bind();
}

void HttpServer::stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace spellgraph::service
