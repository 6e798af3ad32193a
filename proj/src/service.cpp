#include "hyperbot/service.hpp"

#include <chrono>
#include <ctime>
#include <deque>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "hyperbot/classifier.hpp"
#include "hyperbot/json_io.hpp"
#include "hyperbot/render.hpp"

namespace hyperbot {

namespace {

ApiResponse json_response(int status, const Json& body) { return {status, "application/json", body.dump()}; }

ApiResponse error(int status, const std::string& message) {
  return json_response(status, Json{{"error", message}});
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(path);
  while (std::getline(in, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::string percent_decode(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      out += static_cast<char>(std::stoi(s.substr(i + 1, 2), nullptr, 16));
      i += 2;
    } else {
      out += s[i] == '+' ? ' ' : s[i];
    }
  }
  return out;
}

std::map<std::string, std::string> parse_query(const std::string& query) {
  std::map<std::string, std::string> out;
  std::istringstream in(query);
  std::string pair;
  while (std::getline(in, pair, '&')) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) {
      out[percent_decode(pair)] = "";
    } else {
      out[percent_decode(pair.substr(0, eq))] = percent_decode(pair.substr(eq + 1));
    }
  }
  return out;
}

double query_double(const std::map<std::string, std::string>& q, const std::string& key, double fallback) {
  const auto it = q.find(key);
  if (it == q.end()) return fallback;
  std::size_t used = 0;
  const double v = std::stod(it->second, &used);
  if (used != it->second.size()) throw std::invalid_argument("malformed number for " + key);
  return v;
}

int query_int(const std::map<std::string, std::string>& q, const std::string& key, int fallback, int lo, int hi) {
  const auto it = q.find(key);
  if (it == q.end()) return fallback;
  std::size_t used = 0;
  const int v = std::stoi(it->second, &used);
  if (used != it->second.size() || v < lo || v > hi) {
    throw std::invalid_argument(key + " must be an integer in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
  return v;
}

bool valid_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') return false;
  }
  return true;
}

std::string new_id() {
  static std::mutex m;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(m);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ApiResponse scene_response(const Scene& scene, const std::map<std::string, std::string>& q) {
  const auto fmt = q.find("format");
  if (fmt != q.end() && fmt->second == "svg") return {200, "image/svg+xml", render_svg(scene)};
  return json_response(200, arcs_json(scene));
}

}  // namespace

SessionStore::SessionStore(std::filesystem::path data_dir) : dir_(std::move(data_dir)) {
  std::filesystem::create_directories(dir_);
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.path().extension() != ".json") continue;
    try {
      std::ifstream in(entry.path());
      std::stringstream text;
      text << in.rdbuf();
      auto s = std::make_unique<TurtleSession>(TurtleSession::from_json(text.str()));
      if (!valid_id(s->id())) continue;
      auto slot = std::make_shared<Slot>();
      const std::string id = s->id();
      slot->session = std::move(s);
      sessions_[id] = std::move(slot);
    } catch (const std::exception& e) {
      std::cerr << "skipping " << entry.path() << ": " << e.what() << "\n";
    }
  }
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void SessionStore::persist(const TurtleSession& s) const {
  const auto target = dir_ / (s.id() + ".json");
  const auto tmp = dir_ / (s.id() + ".json.tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << s.to_json() << "\n";
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::uint64_t SessionStore::subscribe(const std::string& id, Listener fn) {
  if (!find(id)) return 0;
  std::lock_guard lock(mutex_);
  const std::uint64_t token = next_token_++;
  listeners_.emplace(token, std::make_pair(id, std::move(fn)));
  return token;
}

void SessionStore::unsubscribe(std::uint64_t token) {
  std::lock_guard lock(mutex_);
  listeners_.erase(token);
}

void SessionStore::publish(const std::string& id, const std::string& message) {
  std::vector<Listener> targets;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [token, entry] : listeners_) {
      if (entry.first == id) targets.push_back(entry.second);
    }
  }
  for (const Listener& fn : targets) fn(message);
}

ApiResponse SessionStore::create(const std::string& body) {
  Json req;
  try {
    req = Json::parse(body.empty() ? "{}" : body);
  } catch (const Json::exception&) {
    return error(400, "body is not JSON");
  }
  if (!req.contains("r") || !req["r"].is_number()) return error(400, "field r (number) is required");
  auto slot = std::make_shared<Slot>();
  try {
    slot->session = std::make_unique<TurtleSession>(new_id(), req["r"].get<double>(), req.value("N", 2),
                                                    req.value("dimension", 2), utc_now());
  } catch (const std::exception& e) {
    return error(400, e.what());
  }
  const TurtleSession& s = *slot->session;
  persist(s);
  {
    std::lock_guard lock(mutex_);
    sessions_[s.id()] = slot;
  }
  const Json summary = session_summary(s);
  return json_response(201, Json{{"id", s.id()},
                                 {"classification", summary["classification"]},
                                 {"banner", s.banner()},
                                 {"session", summary}});
}

ApiResponse SessionStore::command(const std::string& id, const std::string& body) {
  const auto slot = find(id);
  if (!slot) return error(404, "no such session");
  Json req;
  try {
    req = Json::parse(body);
  } catch (const Json::exception&) {
    return error(400, "body is not JSON");
  }
  if (!req.contains("cmd") || !req["cmd"].is_string()) return error(400, "field cmd (string) is required");
  Json event;
  {
    std::lock_guard lock(slot->mutex);
    TurtleSession& s = *slot->session;
    try {
      event = to_json(s.execute(req["cmd"].get<std::string>()));
    } catch (const ParseError& e) {
      return json_response(400, Json{{"error", e.what()}, {"column", e.column()}});
    } catch (const std::invalid_argument& e) {
      return error(400, e.what());
    }
    event["id"] = id;
    event["state"] = s.dimension() == 3 ? to_json(s.state3()) : to_json(s.state());
    persist(s);
    // Published under the session lock so stream order matches command order.
    publish(id, event.dump());
  }
  return json_response(200, event);
}

ApiResponse SessionStore::handle(const std::string& method, const std::string& target,
                                 const std::string& body) {
  const auto qpos = target.find('?');
  const auto parts = split_path(target.substr(0, qpos));
  const auto query = qpos == std::string::npos ? std::map<std::string, std::string>{}
                                               : parse_query(target.substr(qpos + 1));
  if (method == "OPTIONS") return {204, "text/plain", ""};
  if (parts.size() < 2 || parts[0] != "api") return error(404, "not found");
  try {
    const std::string& head = parts[1];
    if (head == "session") {
      if (parts.size() == 2) return method == "POST" ? create(body) : error(405, "use POST");
      const std::string& id = parts[2];
      if (parts.size() == 4 && parts[3] == "command") {
        return method == "POST" ? command(id, body) : error(405, "use POST");
      }
      if (method != "GET") return error(405, "use GET");
      const auto slot = find(id);
      if (!slot) return error(404, "no such session");
      std::lock_guard lock(slot->mutex);
      const TurtleSession& s = *slot->session;
      if (parts.size() == 3) return json_response(200, session_summary(s));
      if (parts.size() == 4 && parts[3] == "svg") return {200, "image/svg+xml", render_svg(s.trace_scene())};
      if (parts.size() == 4 && parts[3] == "arcs") return json_response(200, arcs_json(s.trace_scene()));
      return error(404, "not found");
    }
    if (method != "GET") return error(405, "use GET");
    if (head == "classify" && parts.size() == 2) {
      if (!query.count("r")) return error(400, "query parameter r is required");
      return json_response(200, to_json(classify(query_double(query, "r", 0))));
    }
    if (head == "breakpoints" && parts.size() == 2) {
      Json list = Json::array();
      for (const Breakpoint& b : breakpoints()) list.push_back({{"label", b.label}, {"r", b.r}});
      return json_response(200, Json{{"breakpoints", list}});
    }
    if (head == "overlay" && parts.size() == 3) {
      if (parts[2] == "tiling") {
        const int n = query_int(query, "n", 5, 5, 64);
        const int depth = query_int(query, "depth", 3, 0, 6);
        return scene_response(tiling_scene(generate_tiling(n, depth)), query);
      }
      if (parts[2] == "tree") {
        const double r = query_double(query, "r", kRInf + 0.05);
        const int depth = query_int(query, "depth", 4, 0, 6);
        return scene_response(tree_scene(tree_embedding(r, depth)), query);
      }
      if (parts[2] == "orbit") {
        const double r = query_double(query, "r", r_n(5));
        const int depth = query_int(query, "depth", 6, 0, 10);
        return scene_response(orbit_scene(orbit_bfs(r, depth)), query);
      }
    }
    return error(404, "not found");
  } catch (const std::domain_error& e) {
    return error(400, e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, e.what());
  } catch (const std::out_of_range& e) {
    return error(400, e.what());
  }
}

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

class StreamSession : public std::enable_shared_from_this<StreamSession> {
 public:
  StreamSession(tcp::socket&& socket, SessionStore& store, std::string id)
      : ws_(std::move(socket)), store_(store), id_(std::move(id)) {}

  ~StreamSession() {
    if (token_) store_.unsubscribe(token_);
  }

  void run(http::request<http::string_body> req) {
    beast::get_lowest_layer(ws_).expires_never();
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&StreamSession::on_accept, shared_from_this()));
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    std::weak_ptr<StreamSession> weak = weak_from_this();
    token_ = store_.subscribe(id_, [weak](const std::string& msg) {
      if (auto self = weak.lock()) {
        net::post(self->ws_.get_executor(), [self, msg] { self->send(msg); });
      }
    });
    if (!token_) {
      ws_.async_close(websocket::close_code::policy_error, [self = shared_from_this()](beast::error_code) {});
      return;
    }
    do_read();
  }

  void do_read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->buffer_.consume(self->buffer_.size());
      self->do_read();
    });
  }

  void send(const std::string& msg) {
    queue_.push_back(msg);
    if (queue_.size() == 1) do_write();
  }

  void do_write() {
    ws_.text(true);
    ws_.async_write(net::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->queue_.pop_front();
      if (!self->queue_.empty()) self->do_write();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  SessionStore& store_;
  std::string id_;
  std::uint64_t token_ = 0;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, SessionStore& store) : stream_(std::move(socket)), store_(store) {}

  void run() {
    net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpSession::do_read, shared_from_this()));
  }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(60));
    http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) return close();
    if (ec) return;
    const std::string target(req_.target());
    if (websocket::is_upgrade(req_)) {
      const auto parts = split_path(target.substr(0, target.find('?')));
      if (parts.size() == 4 && parts[0] == "api" && parts[1] == "session" && parts[3] == "stream") {
        std::make_shared<StreamSession>(stream_.release_socket(), store_, parts[2])->run(std::move(req_));
        return;
      }
    }
    ApiResponse r = store_.handle(std::string(req_.method_string()), target, req_.body());
    auto res = std::make_shared<http::response<http::string_body>>(static_cast<http::status>(r.status), req_.version());
    res->set(http::field::server, "hyperbot");
    res->set(http::field::content_type, r.content_type);
    res->set(http::field::access_control_allow_origin, "*");
    res->set(http::field::access_control_allow_headers, "Content-Type");
    res->set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
    res->keep_alive(req_.keep_alive());
    res->body() = std::move(r.body);
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code wec, std::size_t) {
      if (wec) return;
      if (res->need_eof()) return self->close();
      self->do_read();
    });
  }

  void close() {
    beast::error_code ec;
    stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  SessionStore& store_;
};

}  // namespace

struct Service::Impl {
  explicit Impl(const ServiceOptions& o)
      : threads(std::max(1, o.threads)), store(o.data_dir), ioc(threads), acceptor(ioc) {
    beast::error_code ec;
    const tcp::endpoint endpoint(net::ip::make_address(o.address, ec), o.port);
    if (ec) throw std::runtime_error("bad address " + o.address);
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(endpoint, ec);
    if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
    if (ec) throw std::runtime_error("cannot listen on " + o.address + ":" + std::to_string(o.port) + ": " + ec.message());
  }

  void do_accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (!ec) std::make_shared<HttpSession>(std::move(socket), store)->run();
      if (acceptor.is_open()) do_accept();
    });
  }

  int threads;
  // Outlives ioc: handlers destroyed with ioc unsubscribe from it.
  SessionStore store;
  net::io_context ioc;
  tcp::acceptor acceptor;
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(options)) {}

Service::~Service() = default;

unsigned short Service::port() const { return impl_->acceptor.local_endpoint().port(); }

void Service::run() {
  impl_->do_accept();
  std::vector<std::thread> pool;
  for (int i = 1; i < impl_->threads; ++i) pool.emplace_back([this] { impl_->ioc.run(); });
  impl_->ioc.run();
  for (auto& t : pool) t.join();
}

void Service::stop() {
  net::post(impl_->ioc, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
  });
  impl_->ioc.stop();
}

}  // namespace hyperbot
