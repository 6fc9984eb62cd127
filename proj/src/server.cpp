#include "emoact/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <chrono>
#include <map>

#include "emoact/protocol.hpp"
#include "emoact/session.hpp"
#include "emoact/trace.hpp"

namespace emoact {

namespace {

std::runtime_error sys_error(const std::string& what) {
    return std::runtime_error(what + ": " + std::strerror(errno));
}

bool write_all(int fd, const std::string& data) {
    std::size_t done = 0;
    while (done < data.size()) {
        const ssize_t n = ::send(fd, data.data() + done, data.size() - done, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        done += static_cast<std::size_t>(n);
    }
    return true;
}

// Reads the next '\n'-terminated line from fd into `line`.
bool read_line(int fd, std::string& buffer, std::string& line) {
    while (true) {
        if (auto pos = buffer.find('\n'); pos != std::string::npos) {
            line = buffer.substr(0, pos);
            buffer.erase(0, pos + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
        char chunk[4096];
        const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) return false;
        buffer.append(chunk, static_cast<std::size_t>(n));
    }
}

std::string error_line(std::int64_t seq, std::int64_t t, const std::string& code, const std::string& message) {
    return protocol::encode_line(
        protocol::to_json(protocol::ServerMessage{seq, t, protocol::Error{code, message}}));
}

}  // namespace

StoryResolver directory_resolver(std::filesystem::path dir) {
    auto cache = std::make_shared<std::map<std::string, std::shared_ptr<const StoryGraph>>>();
    auto mutex = std::make_shared<std::mutex>();
    return [dir = std::move(dir), cache, mutex](const std::string& id) -> std::shared_ptr<const StoryGraph> {
        std::lock_guard lock(*mutex);
        if (auto it = cache->find(id); it != cache->end()) return it->second;
        if (id.empty() || id.find('/') != std::string::npos || id.find("..") != std::string::npos) {
            throw StoryError({{"not-found", "", "story not found: " + id}});
        }
        auto graph = std::make_shared<const StoryGraph>(load_story_file(dir / (id + ".json")));
        (*cache)[id] = graph;
        return graph;
    };
}

SessionServer::SessionServer(SessionConfig defaults, StoryResolver resolver, ServerOptions options)
    : defaults_(std::move(defaults)), resolver_(std::move(resolver)), options_(std::move(options)) {}

SessionServer::~SessionServer() { stop(); }

std::uint16_t SessionServer::start() {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw sys_error("socket");
    int yes = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(options_.port);
    if (::inet_pton(AF_INET, options_.bind_address.c_str(), &addr.sin_addr) != 1) {
        throw std::runtime_error("bad bind address " + options_.bind_address);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) throw sys_error("bind");
    if (::listen(listen_fd_, 16) < 0) throw sys_error("listen");

    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    running_ = true;
    acceptor_ = std::thread([this] { accept_loop(); });
    return ntohs(addr.sin_port);
}

void SessionServer::accept_loop() {
    std::size_t index = 0;
    while (running_) {
        pollfd pfd{listen_fd_, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, 100);
        if (ready <= 0) continue;
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) continue;
        std::lock_guard lock(workers_mutex_);
        client_fds_.push_back(fd);
        workers_.emplace_back([this, fd, i = index++] { serve_connection(fd, i); });
    }
}

void SessionServer::serve_connection(int fd, std::size_t index) {
    std::string buffer;
    std::string line;
    std::unique_ptr<Session> session;
    std::unique_ptr<TraceRecorder> recorder;

    while (running_ && read_line(fd, buffer, line)) {
        if (line.empty()) continue;
        protocol::ClientMessage msg;
        try {
            msg = protocol::parse_client_line(line);
        } catch (const protocol::ProtocolError& e) {
            if (!write_all(fd, error_line(-1, 0, "bad-message", e.what()))) break;
            continue;
        }

        if (!session) {
            const auto* start = std::get_if<protocol::StartSession>(&msg.payload);
            if (!start) {
                if (!write_all(fd, error_line(msg.seq, msg.t, "not-started", "start_session must come first"))) break;
                continue;
            }
            SessionConfig config = defaults_;
            if (start->story) config.story_id = *start->story;
            if (start->policy) config.policy.mode = *start->policy;
            if (start->seed) config.seed = *start->seed;
            try {
                session = std::make_unique<Session>(config, resolver_(config.story_id));
            } catch (const std::exception& e) {
                if (!write_all(fd, error_line(msg.seq, msg.t, "story-not-found", e.what()))) break;
                continue;
            }
            recorder = std::make_unique<TraceRecorder>(*session);
        }

        const HandleResult result = session->handle(msg);
        recorder->record(msg, result, *session);
        std::string out;
        for (const auto& m : result.outputs) out += protocol::encode_line(protocol::to_json(m));
        if (!write_all(fd, out)) break;
    }

    if (recorder && options_.trace_dir) {
        try {
            write_trace_file(*options_.trace_dir / ("session-" + std::to_string(index) + ".emoact-trace"),
                             recorder->trace());
        } catch (const std::exception&) {
            // the session itself already completed; a lost trace is not fatal
        }
    }
    {
        std::lock_guard lock(workers_mutex_);
        std::erase(client_fds_, fd);
        ::shutdown(fd, SHUT_RDWR);
        ::close(fd);
    }
    ++served_;
}

void SessionServer::stop() {
    if (!running_.exchange(false)) return;
    if (acceptor_.joinable()) acceptor_.join();
    std::vector<std::thread> workers;
    {
        std::lock_guard lock(workers_mutex_);
        for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
        workers.swap(workers_);
    }
    for (auto& w : workers) w.join();
    if (listen_fd_ >= 0) ::close(listen_fd_);
    listen_fd_ = -1;
}

void SessionServer::wait() {
    while (running_) std::this_thread::sleep_for(std::chrono::milliseconds(200));
}

LineClient::LineClient(const std::string& host, std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw sys_error("socket");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) throw std::runtime_error("bad host " + host);
    if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
        ::close(fd_);
        fd_ = -1;
        throw sys_error("connect");
    }
}

LineClient::~LineClient() { close(); }

void LineClient::send_line(const std::string& line) {
    std::string data = line;
    if (data.empty() || data.back() != '\n') data += '\n';
    if (!write_all(fd_, data)) throw sys_error("send");
}

std::optional<std::string> LineClient::read_line() {
    std::string line;
    if (!emoact::read_line(fd_, buffer_, line)) return std::nullopt;
    return line;
}

void LineClient::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

}  // namespace emoact
