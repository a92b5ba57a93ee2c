#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <nlohmann/json.hpp>
#include <thread>

#include "irfeed/model.hpp"

using namespace irfeed;

namespace {

// In-process completion server for adapter tests.
struct TestServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;

  explicit TestServer(httplib::Server::Handler handler) {
    server.Post("/v1/completions", std::move(handler));
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~TestServer() {
    server.stop();
    thread.join();
  }
  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port) + "/v1/completions";
  }
};

}  // namespace

TEST_CASE("http model posts the request and reads choices") {
  nlohmann::json seen_body;
  std::string seen_auth;
  TestServer server([&](const httplib::Request& req, httplib::Response& res) {
    seen_body = nlohmann::json::parse(req.body);
    if (req.has_header("Authorization"))
      seen_auth = req.get_header_value("Authorization");
    nlohmann::json out;
    out["choices"] = {{{"text", "passes: dce\nsrc_inst_count: 1\n"
                                "tgt_inst_count: 1\n"}}};
    res.set_content(out.dump(), "application/json");
  });

  HttpModel model(server.endpoint(), "secret-key", 5, 2);
  GenParams params;
  params.temperature = 0.7;
  auto texts = model.generate("the prompt", params);
  REQUIRE(texts.size() == 1);
  CHECK(texts[0].rfind("passes: dce", 0) == 0);
  CHECK(seen_body["prompt"] == "the prompt");
  CHECK(seen_body["temperature"] == 0.7);
  CHECK(seen_body["n"] == 1);
  CHECK(seen_auth == "Bearer secret-key");
}

TEST_CASE("http model accepts the bare texts array form") {
  TestServer server([&](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"texts":["one","two"]})", "application/json");
  });
  HttpModel model(server.endpoint());
  GenParams params;
  params.n_samples = 2;
  auto texts = model.generate("p", params);
  CHECK(texts == std::vector<std::string>{"one", "two"});
}

TEST_CASE("http model retries transient failures, then succeeds") {
  std::atomic<int> calls{0};
  TestServer server([&](const httplib::Request&, httplib::Response& res) {
    if (++calls == 1) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"texts":["ok"]})", "application/json");
  });
  HttpModel model(server.endpoint(), "", 5, 3);
  auto texts = model.generate("p", GenParams{});
  CHECK(texts == std::vector<std::string>{"ok"});
  CHECK(calls == 2);
}

TEST_CASE("http model gives up after max attempts with a retriable error") {
  std::atomic<int> calls{0};
  TestServer server([&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 500;
  });
  HttpModel model(server.endpoint(), "", 5, 3);
  try {
    model.generate("p", GenParams{});
    FAIL("expected ModelError");
  } catch (const ModelError& e) {
    CHECK(e.retriable);
    CHECK(e.attempts == 3);
    CHECK(std::string(e.what()).find("500") != std::string::npos);
  }
  CHECK(calls == 3);
}

TEST_CASE("http model rejects a short completion batch") {
  TestServer server([&](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"texts":["only-one"]})", "application/json");
  });
  HttpModel model(server.endpoint(), "", 5, 1);
  GenParams params;
  params.n_samples = 3;
  CHECK_THROWS_AS(model.generate("p", params), ModelError);
}
