#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <thread>

#include "pirsi/wire.hpp"

namespace pirsi::net {

// Deterministic frame handler over an immutable database. State never
// depends on anything but (db, received frame), so replays are byte-stable.
class PirServer {
public:
    explicit PirServer(Database db);

    wire::Frame handle(const wire::Frame& request) const;
    const Database& db() const { return db_; }

private:
    Database db_;
};

// Reliable request/response byte channel to one server.
class Channel {
public:
    virtual ~Channel() = default;
    virtual wire::Frame roundtrip(const wire::Frame& request) = 0;
};

// In-memory transport: frames are encoded and decoded exactly as on the
// wire, then handed to the server directly.
class LoopbackChannel : public Channel {
public:
    explicit LoopbackChannel(const PirServer& server) : server_(server) {}
    wire::Frame roundtrip(const wire::Frame& request) override;

private:
    const PirServer& server_;
};

class TcpChannel : public Channel {
public:
    TcpChannel(const std::string& host, uint16_t port);
    ~TcpChannel() override;
    TcpChannel(const TcpChannel&) = delete;
    TcpChannel& operator=(const TcpChannel&) = delete;

    wire::Frame roundtrip(const wire::Frame& request) override;

private:
    int fd_ = -1;
};

class TcpServer {
public:
    // port 0 binds an ephemeral port, readable via port().
    TcpServer(Database db, const std::string& host, uint16_t port);
    ~TcpServer();

    uint16_t port() const { return port_; }
    void start();  // background accept loop
    void stop();
    void run();  // blocking accept loop (daemon mode)

private:
    void accept_loop();
    void serve_connection(int fd);

    PirServer server_;
    int listen_fd_ = -1;
    uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::thread accept_thread_;
    std::vector<std::thread> workers_;
    std::mutex conn_mutex_;
    std::vector<int> conn_fds_;  // open connections, shut down on stop()
};

// "host:port" -> pair; throws ParameterError on bad input.
std::pair<std::string, uint16_t> parse_addr(const std::string& addr);

}  // namespace pirsi::net
