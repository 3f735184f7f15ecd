#include <gtest/gtest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "parascrape/html.hpp"

using namespace parascrape;

namespace {

const DomNode& only_child(const DomNode& n) {
    EXPECT_EQ(n.children.size(), 1u);
    return n.children.at(0);
}

}  // namespace

TEST(Html, NestedStructure) {
    auto root = parse_html(R"(<div class="a"><a href="x">t</a></div>)");
    EXPECT_TRUE(root.is_root());
    const auto& div = only_child(root);
    EXPECT_EQ(div.tag, "div");
    EXPECT_EQ(node_attr(div, "class"), "a");
    const auto& a = only_child(div);
    EXPECT_EQ(a.tag, "a");
    EXPECT_EQ(node_attr(a, "href"), "x");
    const auto& t = only_child(a);
    EXPECT_TRUE(t.is_text());
    EXPECT_EQ(t.text_content, "t");
}

TEST(Html, EmptyInput) { EXPECT_TRUE(parse_html("").children.empty()); }

TEST(Html, UnclosedElementAutoClosesAtEnd) {
    auto root = parse_html("<p>hello");
    const auto& p = only_child(root);
    EXPECT_EQ(p.tag, "p");
    EXPECT_EQ(only_child(p).text_content, "hello");
}

TEST(Html, NonHtmlIsSingleText) {
    auto root = parse_html("just some words < 5 and > 3");
    const auto& t = only_child(root);
    EXPECT_TRUE(t.is_text());
    EXPECT_EQ(t.text_content, "just some words < 5 and > 3");
}

TEST(Html, LenientRecovery) {
    // Stray end tag ignored; </div> closes the open <b> and <i> on the way out.
    auto root = parse_html("<div><b><i>x</span></div><p>y</p>");
    ASSERT_EQ(root.children.size(), 2u);
    EXPECT_EQ(root.children[0].tag, "div");
    EXPECT_EQ(node_text(root.children[0]), "x");
    EXPECT_EQ(root.children[1].tag, "p");
}

TEST(Html, VoidAndSelfClosing) {
    auto root = parse_html(R"(<div><img src="a.jpg"><br/><span>s</span></div>)");
    const auto& div = only_child(root);
    ASSERT_EQ(div.children.size(), 3u);
    EXPECT_TRUE(div.children[0].children.empty());
    EXPECT_EQ(div.children[2].tag, "span");
}

TEST(Html, AttributesAndComments) {
    auto root = parse_html(R"(<!DOCTYPE html><!-- <a href="hidden"> --><A HREF=x data-k='v' checked>t</A>)");
    const auto& a = only_child(root);
    EXPECT_EQ(a.tag, "a");
    EXPECT_EQ(node_attr(a, "href"), "x");
    EXPECT_EQ(node_attr(a, "HREF"), "x");
    EXPECT_EQ(node_attr(a, "data-k"), "v");
    EXPECT_EQ(node_attr(a, "checked"), "");
    EXPECT_FALSE(node_attr(a, "title"));
}

TEST(Html, ScriptContentIsDropped) {
    auto root = parse_html(R"(<script>var s = "<div>";</script><style>p{}</style><p>kept</p>)");
    EXPECT_EQ(node_text(root), "kept");
}

TEST(Html, Entities) {
    auto root = parse_html("<p>a &amp; b &lt;c&gt; &#65;&#x42; &nbsp;&unknown;</p>");
    EXPECT_EQ(node_text(root), "a & b <c> AB \xc2\xa0&unknown;");
}

TEST(Html, NodeTextWhitespace) {
    auto root = parse_html("<p> a <b>b</b> c </p>");
    EXPECT_EQ(node_text(only_child(root)), "a b c");
    EXPECT_EQ(node_text(only_child(parse_html("<div></div>"))), "");
    EXPECT_EQ(collapse_ws("  two \t\n spaces "), "two spaces");
}

TEST(Html, EscapedTextRoundTrips) {
    std::mt19937_64 rng(2);
    const std::string alphabet = "ab <>&;#x/\"'=!-";
    for (int i = 0; i < 2000; ++i) {
        std::string s(rng() % 20, ' ');
        for (auto& c : s) c = alphabet[rng() % alphabet.size()];
        auto root = parse_html("<p>" + escape_html_text(s) + "</p>");
        ASSERT_EQ(node_text(root), collapse_ws(s)) << s;
    }
}

TEST(Html, NodeCountBoundedBySource) {
    for (const char* f : {"card.html", "state_listing.html", "product.html", "site/store-1.html"}) {
        auto src = oracle::slurp(oracle::fixture(f));
        auto root = parse_html(src);
        EXPECT_GT(count_nodes(root), 1u);
        EXPECT_LE(count_nodes(root), src.size() + 1) << f;
    }
}

TEST(Html, FixtureCorpusText) {
    auto root = parse_html(oracle::slurp(oracle::fixture("card.html")));
    auto text = node_text(root);
    EXPECT_NE(text.find("Green Leaf Collective"), std::string::npos);
    EXPECT_NE(text.find("Order delivery or pickup"), std::string::npos);
}
