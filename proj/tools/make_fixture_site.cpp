// Writes a synthetic multi-page menu site plus manifest.json for the fixture
// transport.
#include <iostream>

#include <CLI11.hpp>

#include "parascrape/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate a fixture menu site", "make_fixture_site"};
    std::string root;
    parascrape::synthetic::SiteOptions opt;
    std::vector<std::size_t> missing;
    app.add_option("dir", root, "output directory")->required();
    app.add_option("--pages", opt.pages, "menu pages")->check(CLI::PositiveNumber);
    app.add_option("--products", opt.products_per_page, "products per page");
    app.add_option("--latency-ms", opt.latency_ms, "latency recorded for every route");
    app.add_option("--missing", missing, "0-based pages answering 404")->delimiter(',');
    app.add_option("--origin", opt.origin, "scheme and host for the URL list");
    CLI11_PARSE(app, argc, argv);
    opt.missing_pages.insert(missing.begin(), missing.end());

    auto site = parascrape::synthetic::write_fixture_site(root, opt);
    std::string list;
    for (const auto& u : site.urls) list += u + "\n";
    parascrape::write_file(site.root / "urls.txt", list);
    std::cerr << "wrote " << site.urls.size() << " pages to " << root << "\n";
    return 0;
}
