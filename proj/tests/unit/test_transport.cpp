#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "parascrape/transport.hpp"

using namespace parascrape;
using namespace std::chrono_literals;

TEST(FixtureTransport, ServesManifestRoutes) {
    ManualClock clock;
    FixtureTransport t(oracle::fixture("site"), clock);
    auto r = t.get("http://fixture.local/dispensary/store-3/menu");
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(r.body, oracle::slurp(oracle::fixture("site/store-3.html")));
    EXPECT_EQ(t.request_count("/dispensary/store-3/menu"), 1);
}

TEST(FixtureTransport, UnroutedPaths) {
    ManualClock clock;
    FixtureTransport t(oracle::fixture(""), std::map<std::string, FixtureRoute>{}, clock);
    auto hit = t.get("http://any.host/card.html");
    EXPECT_EQ(hit.status, 200);
    EXPECT_EQ(hit.body, oracle::slurp(oracle::fixture("card.html")));
    EXPECT_EQ(t.get("http://any.host/missing.html").status, 404);
    EXPECT_EQ(t.get("http://any.host/../CMakeLists.txt").status, 404);
}

TEST(FixtureTransport, LatencyFailuresAndStatus) {
    ManualClock clock;
    auto dir = oracle::scratch_dir("transport");
    std::ofstream(dir / "p.html") << "<p>x</p>";
    std::map<std::string, FixtureRoute> routes;
    routes["/flaky"] = {"p.html", 200, 2, 200};
    routes["/gone"] = {"p.html", 0, 0, 410};
    routes["/nofile"] = {"absent.html", 0, 0, 200};
    FixtureTransport t(dir, routes, clock);

    auto t0 = clock.now();
    EXPECT_EQ(t.get("http://h/flaky").status, 503);
    EXPECT_EQ(t.get("http://h/flaky").status, 503);
    auto ok = t.get("http://h/flaky");
    EXPECT_EQ(ok.status, 200);
    EXPECT_EQ(ok.body, "<p>x</p>");
    EXPECT_EQ(clock.now() - t0, 600ms);
    EXPECT_EQ(t.get("http://h/gone").status, 410);
    EXPECT_EQ(t.get("http://h/nofile").status, 404);
}

TEST(FixtureTransport, ManifestErrors) {
    auto dir = oracle::scratch_dir("manifest");
    std::ofstream(dir / "manifest.json") << R"({"routes": {"/a": {"latency_ms": 1}}})";
    EXPECT_ANY_THROW(load_fixture_manifest(dir / "manifest.json"));
    EXPECT_ANY_THROW(load_fixture_manifest(dir / "absent.json"));
    auto routes = load_fixture_manifest(oracle::fixture("site/manifest.json"));
    EXPECT_EQ(routes.size(), 20u);
}
