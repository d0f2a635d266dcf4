#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "sqcode/serialize.hpp"

namespace fs = std::filesystem;
using sqcode::Json;

namespace {

const std::string kCli = SQCODE_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sqcode_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static inline int counter = 0;
};

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("keygen encrypt decrypt round trip, all three schemes") {
    TempDir dir;
    struct Case {
        std::string keygen, scheme;
    };
    const std::vector<Case> cases = {
        {"keygen --scheme wieschebrink --q 32 --n 24 --k 6 --r 2", "wieschebrink"},
        {"keygen --scheme bl --q 257 --n 150 --k 15 --ell 6", "bl"},
        {"keygen --scheme bbcrs --q 16 --n 15 --k 6", "bbcrs"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.scheme);
        const std::string key = dir.file(c.scheme + "_key");
        REQUIRE(run(c.keygen + " --seed 11 --out " + key) == 0);
        REQUIRE(run("encrypt --scheme " + c.scheme + " --in " + key +
                    ".pk.json --seed 12 --out " + dir.file(c.scheme + "_ct.json") +
                    " --msg-out " + dir.file(c.scheme + "_m.json")) == 0);
        REQUIRE(run("decrypt --scheme " + c.scheme + " --in " + key +
                    ".sk.json --ct " + dir.file(c.scheme + "_ct.json") + " --out " +
                    dir.file(c.scheme + "_dec.json")) == 0);
        const Json want = sqcode::load_json(dir.file(c.scheme + "_m.json"));
        const Json got = sqcode::load_json(dir.file(c.scheme + "_dec.json"));
        CHECK(want.at("m") == got.at("m"));
    }
}

TEST_CASE("same seed gives byte-identical key files") {
    TempDir dir;
    REQUIRE(run("keygen --scheme bbcrs --q 16 --n 15 --k 6 --seed 77 --out " +
                dir.file("a")) == 0);
    REQUIRE(run("keygen --scheme bbcrs --q 16 --n 15 --k 6 --seed 77 --out " +
                dir.file("b")) == 0);
    CHECK(slurp(dir.file("a.sk.json")) == slurp(dir.file("b.sk.json")));
    CHECK(slurp(dir.file("a.pk.json")) == slurp(dir.file("b.pk.json")));
    REQUIRE(run("keygen --scheme bbcrs --q 16 --n 15 --k 6 --seed 78 --out " +
                dir.file("c")) == 0);
    CHECK(slurp(dir.file("a.sk.json")) != slurp(dir.file("c.sk.json")));
}

TEST_CASE("malformed inputs exit 2 without partial output") {
    TempDir dir;
    REQUIRE(run("keygen --scheme bbcrs --q 16 --n 15 --k 6 --seed 5 --out " +
                dir.file("key")) == 0);
    // truncate the secret key
    const std::string full = slurp(dir.file("key.sk.json"));
    {
        std::ofstream out(dir.file("trunc.sk.json"), std::ios::trunc);
        out << full.substr(0, full.size() / 2);
    }
    CHECK(run("decrypt --scheme bbcrs --in " + dir.file("trunc.sk.json") + " --ct " +
              dir.file("missing_ct.json") + " --out " + dir.file("out.json")) == 2);
    CHECK_FALSE(fs::exists(dir.file("out.json")));

    // missing input file
    CHECK(run("attack --scheme bbcrs --in " + dir.file("nonexistent.pk.json") +
              " --seed 1 --out " + dir.file("crack.json")) == 2);
    // invalid parameters
    CHECK(run("keygen --scheme bl --q 257 --n 150 --k 15 --ell 0 --seed 1 --out " +
              dir.file("bad")) == 2);
    // missing seed on a randomized command
    CHECK(run("keygen --scheme bbcrs --q 16 --n 15 --k 6 --out " + dir.file("ns")) == 2);
}

TEST_CASE("attack and crack-decrypt pipeline") {
    TempDir dir;
    const std::string key = dir.file("key");
    REQUIRE(run("keygen --scheme wieschebrink --q 64 --n 56 --k 20 --r 6 --seed 21 "
                "--out " + key) == 0);
    REQUIRE(run("encrypt --scheme wieschebrink --in " + key +
                ".pk.json --seed 22 --out " + dir.file("ct.json") + " --msg-out " +
                dir.file("m.json")) == 0);
    REQUIRE(run("attack --scheme wieschebrink --in " + key + ".pk.json --seed 23 "
                "--out " + dir.file("crack.json")) == 0);
    REQUIRE(run("crack-decrypt --scheme wieschebrink --in " + key + ".pk.json --crack " +
                dir.file("crack.json") + " --ct " + dir.file("ct.json") + " --out " +
                dir.file("cdec.json")) == 0);
    const Json want = sqcode::load_json(dir.file("m.json"));
    const Json got = sqcode::load_json(dir.file("cdec.json"));
    CHECK(want.at("m") == got.at("m"));
}

TEST_CASE("bbcrs dead zone exits 4 with a message") {
    TempDir dir;
    REQUIRE(run("keygen --scheme bbcrs --q 32 --n 16 --k 8 --seed 3 --out " +
                dir.file("key")) == 0);
    CHECK(run("attack --scheme bbcrs --in " + dir.file("key.pk.json") +
              " --seed 4 --out " + dir.file("crack.json")) == 4);
}

TEST_CASE("distinguish reads codes and public keys") {
    TempDir dir;
    // a GRS code file
    auto f = sqcode::Field::make_q(31);
    sqcode::Rng rng(9);
    auto spec = sqcode::random_grs_spec(f, 20, 5, rng);
    sqcode::save_json(dir.file("grs.json"), sqcode::code_to_json(sqcode::grs_code(spec)));
    REQUIRE(run("distinguish --in " + dir.file("grs.json") + " --out " +
                dir.file("rep.json")) == 0);
    Json rep = sqcode::load_json(dir.file("rep.json"));
    CHECK(rep.at("grs_like").get<bool>());
    CHECK(rep.at("dim_sq").get<size_t>() == 9);

    // a random code is not grs_like
    for (;;) {
        auto m = sqcode::random_matrix(f, 5, 20, rng);
        if (sqcode::rank(m) < 5) continue;
        sqcode::save_json(dir.file("rand.json"),
                          sqcode::code_to_json(sqcode::LinearCode::from_generator(m)));
        break;
    }
    REQUIRE(run("distinguish --in " + dir.file("rand.json") + " --out " +
                dir.file("rep2.json")) == 0);
    CHECK_FALSE(sqcode::load_json(dir.file("rep2.json")).at("grs_like").get<bool>());

    // bl public key: square strictly below min(n, k(k+1)/2)
    REQUIRE(run("keygen --scheme bl --q 257 --n 150 --k 15 --ell 6 --seed 31 --out " +
                dir.file("blkey")) == 0);
    REQUIRE(run("distinguish --in " + dir.file("blkey.pk.json") + " --out " +
                dir.file("rep3.json")) == 0);
    Json rep3 = sqcode::load_json(dir.file("rep3.json"));
    CHECK(rep3.at("dim_sq").get<size_t>() <
          rep3.at("expected_random").get<size_t>());
}

TEST_CASE("grs-recover round trips a code file and rejects junk") {
    TempDir dir;
    auto f = sqcode::Field::make_q(64);
    sqcode::Rng rng(17);
    auto spec = sqcode::random_grs_spec(f, 30, 8, rng);
    sqcode::save_json(dir.file("code.json"),
                      sqcode::code_to_json(sqcode::grs_code(spec)));
    REQUIRE(run("grs-recover --in " + dir.file("code.json") + " --out " +
                dir.file("spec.json")) == 0);
    auto rec = sqcode::grs_spec_from_json(sqcode::load_json(dir.file("spec.json")));
    CHECK(sqcode::code_equal(sqcode::grs_code(rec), sqcode::grs_code(spec)));

    for (;;) {
        auto m = sqcode::random_matrix(f, 8, 30, rng);
        if (sqcode::rank(m) < 8) continue;
        sqcode::save_json(dir.file("junk.json"),
                          sqcode::code_to_json(sqcode::LinearCode::from_generator(m)));
        break;
    }
    CHECK(run("grs-recover --in " + dir.file("junk.json") + " --out " +
              dir.file("spec2.json")) == 4);
}

TEST_CASE("bench emits a parseable CSV") {
    TempDir dir;
    REQUIRE(run("bench --preset bbcrs-desk --trials 2 --seed 41 --out " +
                dir.file("bench.csv")) == 0);
    std::ifstream in(dir.file("bench.csv"));
    std::string header, row;
    REQUIRE(std::getline(in, header));
    CHECK(header == "q,n,k,r,trials,mean_seconds,success_rate");
    REQUIRE(std::getline(in, row));
    std::stringstream ss(row);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    REQUIRE(cols.size() == 7);
    CHECK(std::stoul(cols[0]) == 16);
    CHECK(std::stoul(cols[1]) == 15);
    CHECK(std::stoul(cols[2]) == 6);
    CHECK(std::stoul(cols[4]) == 2);
    CHECK(std::stod(cols[6]) == 1.0);
}

TEST_CASE("bench table1-small row succeeds") {
    TempDir dir;
    REQUIRE(run("bench --preset table1-small --trials 2 --seed 43 --out " +
                dir.file("bench.csv")) == 0);
    std::ifstream in(dir.file("bench.csv"));
    std::string header, row;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    std::stringstream ss(row);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    REQUIRE(cols.size() == 7);
    CHECK(std::stoul(cols[0]) == 128);
    CHECK(std::stoul(cols[1]) == 128);
    CHECK(std::stoul(cols[2]) == 79);
    CHECK(std::stoul(cols[3]) == 20);
    CHECK(std::stod(cols[6]) == 1.0);
}

TEST_CASE("load errors name the offending field") {
    using namespace sqcode;
    const Json no_mod = Json{{"p", 2}, {"m", 3}};
    CHECK_THROWS_WITH_AS(field_from_json(no_mod), doctest::Contains("modulus"),
                         ParamError);
    const Json bad_mat = Json{{"rows", 2}, {"cols", 2}, {"data", {1, 2, 3}}};
    auto f = Field::make_q(7);
    CHECK_THROWS_WITH_AS(matrix_from_json(bad_mat, f), doctest::Contains("data"),
                         ParamError);
    Json pk{{"scheme", "bbcrs"},
            {"field", field_to_json(*f)},
            {"n", 4},
            {"k", 2},
            {"g_pub", Json{{"rows", 2}, {"cols", 3}, {"data", {1, 0, 0, 0, 1, 0}}}}};
    CHECK_THROWS_WITH_AS(bbcrs_public_from_json(pk), doctest::Contains("g_pub"),
                         ParamError);
}

TEST_CASE("attack is deterministic given the seed") {
    TempDir dir;
    const std::string key = dir.file("key");
    REQUIRE(run("keygen --scheme bbcrs --q 16 --n 15 --k 6 --seed 91 --out " + key) == 0);
    REQUIRE(run("attack --scheme bbcrs --in " + key + ".pk.json --seed 92 --out " +
                dir.file("c1.json")) == 0);
    REQUIRE(run("attack --scheme bbcrs --in " + key + ".pk.json --seed 92 --out " +
                dir.file("c2.json")) == 0);
    CHECK(slurp(dir.file("c1.json")) == slurp(dir.file("c2.json")));
}

TEST_CASE("attack does not mutate its input files") {
    TempDir dir;
    const std::string key = dir.file("key");
    REQUIRE(run("keygen --scheme bbcrs --q 16 --n 15 --k 6 --seed 55 --out " + key) == 0);
    const std::string before = slurp(key + ".pk.json");
    REQUIRE(run("attack --scheme bbcrs --in " + key + ".pk.json --seed 56 --out " +
                dir.file("crack.json")) == 0);
    CHECK(slurp(key + ".pk.json") == before);
}

}  // TEST_SUITE
