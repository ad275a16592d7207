#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "cgp/builders.hpp"
#include "cgp/fixtures.hpp"
#include "cgp/json_io.hpp"

namespace fs = std::filesystem;
using C = std::complex<double>;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(CGP_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path write_temp(const std::string& name, const std::string& text) {
    const fs::path dir = fs::temp_directory_path() / "cgp-cli-test";
    fs::create_directories(dir);
    const fs::path f = dir / name;
    std::ofstream(f) << text;
    return f;
}

}  // namespace

TEST_CASE("cgp subcommand on the S3 unknot") {
    const cgp::InputFile in{4, 53, cgp::fixtures::s3_unknot(C(0.37, 0.11))};
    const auto f = write_temp("s3.json", cgp::dump_canonical(cgp::input_to_json(in)));
    const Run a = run("cgp " + f.string()), b = run("cgp " + f.string());
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = cgp::Json::parse(a.out);
    const C value(j["cgp"][0].get<double>(), j["cgp"][1].get<double>());
    const C eta(j["constants"]["eta"][0].get<double>(), j["constants"]["eta"][1].get<double>());
    const cgp::ScalarContext ctx(4);
    CHECK(std::abs(value - eta * cgp::modified_dimension(ctx, C(0.37, 0.11))) < 1e-10);
}

TEST_CASE("exit-code contract") {
    CHECK(run("cgp " + write_temp("bad.json", "{\"level\": 4,").string()).code == 2);
    const cgp::InputFile crit{4, 53, cgp::fixtures::s1s2_meridians(C(0.37, 0.11), 0.0)};
    const auto f = write_temp("crit.json", cgp::dump_canonical(cgp::input_to_json(crit)));
    CHECK(run("cgp " + f.string()).code == 3);
    CHECK(run("--auto-stabilize cgp " + f.string()).code == 0);
    // S^3 containing only a sigma-colored unknot has neither a projective edge nor a generic curve.
    cgp::InputFile bare{4, 53, {cgp::unknot(cgp::Color::sigma(2)), {}, {}, 0}};
    const auto g = write_temp("bare.json", cgp::dump_canonical(cgp::input_to_json(bare)));
    CHECK(run("cgp " + g.string()).code == 4);
    CHECK(run("cgp /nonexistent/input.json").code == 2);
}

TEST_CASE("cache returns byte-identical output") {
    const cgp::InputFile in{6, 53, cgp::fixtures::lens51_hopf(0.4)};
    const auto f = write_temp("lens.json", cgp::dump_canonical(cgp::input_to_json(in)));
    const fs::path cache = fs::temp_directory_path() / "cgp-cli-test" / "cache";
    fs::remove_all(cache);
    const Run first = run("--cache-dir " + cache.string() + " cgp " + f.string());
    CHECK(first.code == 0);
    CHECK(std::distance(fs::directory_iterator(cache), fs::directory_iterator{}) == 1);
    const Run second = run("--cache-dir " + cache.string() + " cgp " + f.string());
    CHECK(second.out == first.out);
}

TEST_CASE("other subcommands") {
    const Run c = run("--level 6 constants");
    CHECK(c.code == 0);
    CHECK(cgp::Json::parse(c.out)["identity"]["holds"].get<bool>());
    const Run m = run("--level 4 moddim 0.5");
    CHECK(m.code == 0);
    const auto d = cgp::Json::parse(m.out)["moddim"][0]["d"];
    const C expected = cgp::modified_dimension(cgp::ScalarContext(4), 0.5);
    CHECK(std::abs(C(d[0].get<double>(), d[1].get<double>()) - expected) < 1e-12);
    const Run s = run("--level 6 statespace --genus 1 0.3,0.1");
    CHECK(s.code == 0);
    CHECK(cgp::Json::parse(s.out)["dimension"].get<int>() == 3);
    CHECK(run("--level 5 constants").code == 2);
}
