#pragma once
// Line-oriented TCP transport for the session protocol. Each connection
// hosts one session; sessions share nothing mutable.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "emoact/config.hpp"
#include "emoact/story.hpp"

namespace emoact {

using StoryResolver = std::function<std::shared_ptr<const StoryGraph>(const std::string& story_id)>;

// Looks up "<dir>/<id>.json", caching loaded graphs.
StoryResolver directory_resolver(std::filesystem::path dir);

struct ServerOptions {
    std::string bind_address = "127.0.0.1";
    std::uint16_t port = 0;  // 0 picks a free port
    std::optional<std::filesystem::path> trace_dir;
};

class SessionServer {
public:
    SessionServer(SessionConfig defaults, StoryResolver resolver, ServerOptions options);
    ~SessionServer();

    SessionServer(const SessionServer&) = delete;
    SessionServer& operator=(const SessionServer&) = delete;

    // Binds and starts accepting in the background; returns the bound port.
    std::uint16_t start();
    void stop();
    // Blocks until stop() is called from another thread.
    void wait();

    std::size_t sessions_served() const { return served_.load(); }

private:
    void accept_loop();
    void serve_connection(int fd, std::size_t index);

    SessionConfig defaults_;
    StoryResolver resolver_;
    ServerOptions options_;
    int listen_fd_ = -1;
    std::atomic<bool> running_{false};
    std::atomic<std::size_t> served_{0};
    std::thread acceptor_;
    std::mutex workers_mutex_;
    std::vector<std::thread> workers_;
    std::vector<int> client_fds_;
};

// Minimal blocking line client, used by tests and tooling.
class LineClient {
public:
    LineClient(const std::string& host, std::uint16_t port);
    ~LineClient();

    LineClient(const LineClient&) = delete;
    LineClient& operator=(const LineClient&) = delete;

    void send_line(const std::string& line);
    // nullopt on end of stream.
    std::optional<std::string> read_line();
    void close();

private:
    int fd_ = -1;
    std::string buffer_;
};

}  // namespace emoact
