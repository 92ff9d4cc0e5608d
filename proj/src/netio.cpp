#include "pirsi/netio.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

#include "pirsi/multiserver.hpp"

namespace pirsi::net {

PirServer::PirServer(Database db) : db_(std::move(db)) {
    db_.validate();
}

wire::Frame PirServer::handle(const wire::Frame& request) const {
    try {
        switch (request.msg_type) {
            case wire::HELLO: {
                if (!request.payload.empty()) throw ProtocolError("hello: unexpected payload");
                return {wire::ANSWER, wire::encode_hello_answer(db_.K, db_.t)};
            }
            case wire::PARTITION_QUERY: {
                auto q = wire::decode_partition_query(request.payload, db_.K);
                auto ans = partition::server_answer(db_, q);
                return {wire::ANSWER, wire::encode_partition_answer(ans)};
            }
            case wire::MDS_QUERY: {
                auto q = wire::decode_mds_query(request.payload);
                auto ans = mds::server_answer(db_, q);
                return {wire::ANSWER, wire::encode_mds_answer(ans, db_.t)};
            }
            case wire::SJ_QUERY: {
                std::vector<IndexSet> parts;
                std::vector<sj::QueryAtom> atoms;
                wire::decode_sj_query(request.payload, db_.K, parts, atoms);
                auto super = ms::form_supermessages(db_, parts);
                auto bits = sj::server_answer(super, atoms);
                return {wire::ANSWER, wire::encode_sj_answer(bits)};
            }
            default:
                return {wire::ERROR, wire::encode_error(1, "unknown message type")};
        }
    } catch (const std::exception& e) {
        return {wire::ERROR, wire::encode_error(2, e.what())};
    }
}

wire::Frame LoopbackChannel::roundtrip(const wire::Frame& request) {
    // Full encode/decode on both legs so loopback exercises the real codec.
    size_t off = 0;
    auto req_bytes = wire::encode_frame(request);
    wire::Frame decoded = wire::decode_frame(req_bytes, off);
    auto resp_bytes = wire::encode_frame(server_.handle(decoded));
    off = 0;
    return wire::decode_frame(resp_bytes, off);
}

namespace {

void write_all(int fd, const uint8_t* data, size_t n) {
    while (n > 0) {
        ssize_t w = ::write(fd, data, n);
        if (w <= 0) throw ProtocolError("tcp: write failed");
        data += w;
        n -= static_cast<size_t>(w);
    }
}

bool read_exact(int fd, uint8_t* data, size_t n) {
    while (n > 0) {
        ssize_t r = ::read(fd, data, n);
        if (r == 0) return false;  // orderly shutdown
        if (r < 0) throw ProtocolError("tcp: read failed");
        data += r;
        n -= static_cast<size_t>(r);
    }
    return true;
}

// Reads one frame; false on clean EOF at a frame boundary.
bool read_frame(int fd, wire::Frame& out) {
    std::vector<uint8_t> header(wire::kHeaderSize);
    if (!read_exact(fd, header.data(), header.size())) return false;
    uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len = (len << 8) | header[4 + i];
    std::vector<uint8_t> whole = header;
    whole.resize(wire::kHeaderSize + len);
    if (len > 0 && !read_exact(fd, whole.data() + wire::kHeaderSize, len))
        throw ProtocolError("tcp: connection closed mid-frame");
    size_t off = 0;
    out = wire::decode_frame(whole, off);
    return true;
}

void write_frame(int fd, const wire::Frame& f) {
    auto bytes = wire::encode_frame(f);
    write_all(fd, bytes.data(), bytes.size());
}

}  // namespace

TcpChannel::TcpChannel(const std::string& host, uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    std::string port_str = std::to_string(port);
    if (::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res) != 0 || res == nullptr)
        throw ProtocolError("tcp: cannot resolve " + host);
    fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (fd_ < 0) {
        ::freeaddrinfo(res);
        throw ProtocolError("tcp: socket() failed");
    }
    int rc = ::connect(fd_, res->ai_addr, res->ai_addrlen);
    ::freeaddrinfo(res);
    if (rc != 0) {
        ::close(fd_);
        fd_ = -1;
        throw ProtocolError("tcp: connect to " + host + ":" + port_str + " failed");
    }
}

TcpChannel::~TcpChannel() {
    if (fd_ >= 0) ::close(fd_);
}

wire::Frame TcpChannel::roundtrip(const wire::Frame& request) {
    write_frame(fd_, request);
    wire::Frame response;
    if (!read_frame(fd_, response)) throw ProtocolError("tcp: server closed connection");
    return response;
}

TcpServer::TcpServer(Database db, const std::string& host, uint16_t port)
    : server_(std::move(db)) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw ProtocolError("tcp: socket() failed");
    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (host.empty() || host == "0.0.0.0")
        addr.sin_addr.s_addr = INADDR_ANY;
    else if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        throw ParameterError("tcp: bad listen address " + host);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        ::close(listen_fd_);
        throw ProtocolError("tcp: bind failed");
    }
    if (::listen(listen_fd_, 16) != 0) {
        ::close(listen_fd_);
        throw ProtocolError("tcp: listen failed");
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
    stop();
}

void TcpServer::start() {
    accept_thread_ = std::thread([this] { accept_loop(); });
}

void TcpServer::run() {
    accept_loop();
}

void TcpServer::stop() {
    if (stopping_.exchange(true)) return;
    if (listen_fd_ >= 0) {
        ::shutdown(listen_fd_, SHUT_RDWR);
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    if (accept_thread_.joinable()) accept_thread_.join();
    {
        // Workers block in read; force their connections closed first.
        std::lock_guard<std::mutex> lock(conn_mutex_);
        for (int fd : conn_fds_) ::shutdown(fd, SHUT_RDWR);
    }
    for (auto& w : workers_)
        if (w.joinable()) w.join();
}

void TcpServer::accept_loop() {
    while (!stopping_) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) break;
        {
            std::lock_guard<std::mutex> lock(conn_mutex_);
            conn_fds_.push_back(fd);
        }
        workers_.emplace_back([this, fd] { serve_connection(fd); });
    }
}

void TcpServer::serve_connection(int fd) {
    try {
        wire::Frame request;
        while (read_frame(fd, request)) write_frame(fd, server_.handle(request));
    } catch (const ProtocolError& e) {
        // Framing is unrecoverable once the stream desyncs: report and close.
        try {
            write_frame(fd, {wire::ERROR, wire::encode_error(2, e.what())});
        } catch (...) {
        }
    }
    ::close(fd);
    std::lock_guard<std::mutex> lock(conn_mutex_);
    std::erase(conn_fds_, fd);
}

std::pair<std::string, uint16_t> parse_addr(const std::string& addr) {
    auto colon = addr.rfind(':');
    if (colon == std::string::npos) throw ParameterError("address must be host:port");
    std::string host = addr.substr(0, colon);
    int port = std::stoi(addr.substr(colon + 1));
    if (port < 0 || port > 65535) throw ParameterError("port out of range");
    return {host, static_cast<uint16_t>(port)};
}

}  // namespace pirsi::net
