#include <gtest/gtest.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <filesystem>
#include <thread>

#include "borderforge/datagen.hpp"
#include "borderforge/errors.hpp"
#include "borderforge/obba.hpp"
#include "borderforge/sampling.hpp"
#include "borderforge/wire.hpp"

using namespace borderforge;
using namespace std::chrono_literals;

namespace {

Polynomial P(const Ring& ring, const char* text) { return parse_polynomial(ring, text); }

OracleView worked_view(const Ring& ring) {
  GeneratorSet V(ring, Universe(2, 2));
  V.reducers().insert(P(ring, "x1^2 + x2^2 - 1"));
  V.reducers().insert(P(ring, "x1 - 1"));
  return make_view(V, 5);
}

}  // namespace

TEST(Wire, ViewIsTruncatedAndDescending) {
  Ring ring(7, 2);
  const auto view = worked_view(ring);
  EXPECT_EQ(view.p, 7u);
  EXPECT_EQ(view.n, 2u);
  EXPECT_EQ(view.l, 5u);
  EXPECT_EQ(view.universe_corners, (std::vector<Term>{Term{2, 0}, Term{1, 1}, Term{0, 2}}));
  ASSERT_EQ(view.generators.size(), 2u);
  EXPECT_EQ(view.generators[0], P(ring, "x1^2 + x2^2 - 1"));
  EXPECT_EQ(view.generators[1], P(ring, "x1 - 1"));

  GeneratorSet V(ring, Universe(2, 2));
  V.reducers().insert(P(ring, "x1^2 + x2^2 - 1"));
  EXPECT_EQ(make_view(V, 1).generators[0], P(ring, "x1^2"));
}

TEST(Wire, RequestRoundTrip) {
  Ring ring(7, 2);
  const auto view = worked_view(ring);
  const auto line = encode_request(42, view);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  std::uint64_t id = 0;
  EXPECT_EQ(decode_request(line, &id), view);
  EXPECT_EQ(id, 42u);
  EXPECT_EQ(line,
            "{\"id\":42,\"p\":7,\"n\":2,\"l\":5,\"universe_corners\":[[2,0],[1,1],[0,2]],"
            "\"generators\":[[[1,[2,0]],[1,[0,2]],[6,[0,0]]],[[1,[1,0]],[6,[0,0]]]]}");
}

TEST(Wire, ResponseRoundTrip) {
  const OraclePrediction pairs{{1, Term{1, 0}}, {2, Term{1, 0}}};
  const auto line = encode_response(7, pairs);
  EXPECT_EQ(line, "{\"id\":7,\"pairs\":[[1,[1,0]],[2,[1,0]]]}");
  EXPECT_EQ(decode_response(line, 7, 2), pairs);
  EXPECT_TRUE(decode_response("{\"id\":3,\"pairs\":[]}", 3, 2).empty());
}

TEST(Wire, MalformedMessagesAreUnavailable) {
  std::uint64_t id = 0;
  EXPECT_THROW(decode_request("{", &id), OracleUnavailable);
  EXPECT_THROW(decode_request("{\"id\":1}", &id), OracleUnavailable);
  EXPECT_THROW(decode_response("garbage", 1, 2), OracleUnavailable);
  EXPECT_THROW(decode_response("{\"id\":2,\"pairs\":[]}", 1, 2), OracleUnavailable);
  EXPECT_THROW(decode_response("{\"id\":1,\"pairs\":[],\"error\":\"miss\"}", 1, 2), OracleUnavailable);
  EXPECT_THROW(decode_response("{\"id\":1,\"pairs\":[[1,[1,0,0]]]}", 1, 2), OracleUnavailable);
  EXPECT_THROW(decode_response("{\"id\":1,\"pairs\":[[3,[1,0]]]}", 1, 2), OracleUnavailable);
}

TEST(Wire, ViewKeyIgnoresTheId) {
  Ring ring(7, 2);
  const auto view = worked_view(ring);
  std::uint64_t id = 0;
  EXPECT_EQ(view_key(decode_request(encode_request(9, view), &id)), view_key(view));
  auto other = view;
  other.generators.pop_back();
  EXPECT_NE(view_key(other), view_key(view));
}

TEST(ExternalOracle, RejectsUnknownScheme) { EXPECT_THROW(ExternalOracle("tcp:1234"), ConfigError); }

TEST(ExternalOracle, TimeoutIsUnavailable) {
  ExternalOracle oracle("exec:sleep 5", 200ms);
  const auto start = std::chrono::steady_clock::now();
  EXPECT_THROW(oracle.round_trip("{}"), OracleUnavailable);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 3s);
}

TEST(ExternalOracle, ClosedConnectionIsUnavailable) {
  ExternalOracle oracle("exec:true", 2000ms);
  EXPECT_THROW(oracle.round_trip("{}"), OracleUnavailable);
}

TEST(ExternalOracle, MismatchedIdIsUnavailable) {
  Ring ring(7, 2);
  ExternalOracle oracle("exec:while read line; do echo '{\"id\":999,\"pairs\":[]}'; done", 2000ms);
  GeneratorSet V(ring, Universe(2, 2));
  V.reducers().insert(P(ring, "x1 - 1"));
  EXPECT_THROW(oracle.predict({ring, V, Variant::Ibba, 5}), OracleUnavailable);
}

TEST(ExternalOracle, UnavailableOracleFallsBackInTheSolver) {
  Ring ring(7, 2);
  ExternalOracle oracle("exec:true", 2000ms);
  const auto r = run_obba(ring, {P(ring, "x1^2 + x2^2 - 1"), P(ring, "x1 - 1")}, oracle, {5, 0.1, 5});
  EXPECT_GT(r.trace.oracle_unavailable, 0u);
  EXPECT_EQ(r.basis, compute_border_basis(ring, {P(ring, "x1^2 + x2^2 - 1"), P(ring, "x1 - 1")}).basis);
}

TEST(ExternalOracle, UnixSocket) {
  Ring ring(7, 2);
  const auto path = (std::filesystem::temp_directory_path() / ("borderforge_" + std::to_string(::getpid()) + ".sock")).string();
  std::filesystem::remove(path);
  const int listener = ::socket(AF_UNIX, SOCK_STREAM, 0);
  ASSERT_GE(listener, 0);
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  std::strncpy(addr.sun_path, path.c_str(), sizeof(addr.sun_path) - 1);
  ASSERT_EQ(::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)), 0);
  ASSERT_EQ(::listen(listener, 1), 0);

  std::thread server([&] {
    const int fd = ::accept(listener, nullptr, nullptr);
    std::string buffer;
    char chunk[4096];
    for (;;) {
      const auto nl = buffer.find('\n');
      if (nl == std::string::npos) {
        const ssize_t n = ::read(fd, chunk, sizeof(chunk));
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        continue;
      }
      std::uint64_t id = 0;
      const auto view = decode_request(buffer.substr(0, nl), &id);
      buffer.erase(0, nl + 1);
      OraclePrediction pairs;
      for (const auto& g : view.generators) pairs.push_back({1, g.lt()});
      const auto reply = encode_response(id, pairs) + "\n";
      if (::write(fd, reply.data(), reply.size()) < 0) break;
    }
    ::close(fd);
  });

  {
    ExternalOracle oracle("unix:" + path, 2000ms);
    GeneratorSet V(ring, Universe(2, 2));
    V.reducers().insert(P(ring, "x1^2 + x2^2 - 1"));
    V.reducers().insert(P(ring, "x1 - 1"));
    const auto pairs = oracle.predict({ring, V, Variant::Ibba, 5});
    EXPECT_EQ(pairs, (OraclePrediction{{1, Term{2, 0}}, {1, Term{1, 0}}}));
    EXPECT_EQ(oracle.predict({ring, V, Variant::Ibba, 5}), pairs);
  }
  server.join();
  ::close(listener);
  std::filesystem::remove(path);
  EXPECT_THROW(ExternalOracle("unix:" + path).round_trip("{}"), OracleUnavailable);
}

#ifdef BORDERFORGE_ORACLE_SERVER

TEST(OracleServer, FullBackendMatchesFullOracle) {
  Ring ring(31, 3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto F = generate_instance(ring, {}, seed).F;
    ExternalOracle external(std::string("exec:") + BORDERFORGE_ORACLE_SERVER + " --backend full");
    FullOracle full;
    const OracleConfig oc{5, 0.1, 5};
    const auto a = run_obba(ring, F, external, oc);
    const auto b = run_obba(ring, F, full, oc);
    ASSERT_EQ(a.trace.oracle_unavailable, 0u);
    ASSERT_EQ(a.trace, b.trace);
    ASSERT_EQ(a.basis, b.basis);
  }
}

TEST(OracleServer, ReplayBackendMatchesBuiltinReplay) {
  Ring ring(31, 3);
  const auto path = (std::filesystem::temp_directory_path() / "borderforge_replay_server.jsonl").string();
  std::vector<std::vector<Polynomial>> systems;
  std::vector<TrainingSample> samples;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    systems.push_back(generate_instance(ring, {}, seed).F);
    const auto run = label_run(ring, systems.back());
    const auto s = extract_samples(run.exchanges, 5);
    samples.insert(samples.end(), s.begin(), s.end());
  }
  write_dataset(path, samples);
  for (const auto& F : systems) {
    ExternalOracle external(std::string("exec:") + BORDERFORGE_ORACLE_SERVER + " --backend replay:" + path);
    auto builtin = make_replay_oracle(samples);
    const auto a = run_obba(ring, F, external);
    const auto b = run_obba(ring, F, builtin);
    ASSERT_EQ(a.trace, b.trace);
    ASSERT_EQ(a.basis, b.basis);
  }
  std::filesystem::remove(path);
}

TEST(OracleServer, MalformedRequestGetsAnErrorReply) {
  ExternalOracle external(std::string("exec:") + BORDERFORGE_ORACLE_SERVER + " --backend full");
  const auto reply = external.round_trip("{\"id\":5,\"p\":7}");
  EXPECT_NE(reply.find("\"id\":5"), std::string::npos);
  EXPECT_NE(reply.find("\"error\""), std::string::npos);
  EXPECT_THROW(decode_response(reply, 5, 2), OracleUnavailable);
}

#endif
