#include "hypwalk/word.hpp"

#include "hypwalk/rng.hpp"

#include <doctest.h>

using namespace hypwalk;

namespace {

Word W(const char* text) { return *Word::parse(text, 26); }

Word random_word(Sampler& s, int max_len) {
    Word w;
    std::size_t len = s.raw() % static_cast<std::uint64_t>(max_len + 1);
    while (w.size() < len) {
        auto idx = static_cast<Word::Letter>(1 + s.raw() % 2);
        w.push((s.raw() & 1) ? idx : static_cast<Word::Letter>(-idx));
    }
    return w;
}

} // namespace

TEST_CASE("words reduce on construction and multiplication") {
    CHECK(W("abA").str() == "abA");
    CHECK(W("aA").empty());
    CHECK(W("abBA").empty());
    CHECK((W("ab") * W("BA")).empty());
    CHECK((W("ab") * W("Bc")).str() == "ac");
    CHECK(W("ab").inverse().str() == "BA");
}

TEST_CASE("word parsing rejects foreign characters and deep generators") {
    std::string err;
    CHECK(!Word::parse("a b", 2, &err));
    CHECK(!Word::parse("ax", 2, &err));
    CHECK(Word::parse("ax", 26).has_value());
}

TEST_CASE("word distance agrees with cancellation") {
    CHECK(word_distance(W("ab"), W("ac")) == 2);
    CHECK(word_distance(W("ab"), W("ab")) == 0);
    CHECK(word_distance(Word{}, W("abab")) == 4);
}

TEST_CASE("cyclic reduction returns core and conjugator") {
    auto [core, conj] = W("abA").cyclic_reduced();
    CHECK(core.str() == "b");
    CHECK(conj.str() == "a");
    auto [core2, conj2] = W("aba").cyclic_reduced();
    CHECK(core2.str() == "aba");
    CHECK(conj2.empty());
}

TEST_CASE("group elements with the central involution letter") {
    GroupElement g{W("ab"), true};
    GroupElement h{W("BA"), true};
    CHECK(mul(g, h).is_identity());
    CHECK(to_string(g) == "abc");
    CHECK(inv(g).flip);
    CHECK(mul(g, inv(g)).is_identity());

    CHECK(mul(GroupElement{W("ab"), false}, GroupElement{W("BA"), false}).is_identity());
    auto [core, conj] = cyclic_reduce(GroupElement{W("abA"), false});
    CHECK(core.word.str() == "b");
    CHECK(conj.word.str() == "a");
}

TEST_CASE("group algebra properties on random words") {
    Sampler s(2024);
    for (int i = 0; i < 400; ++i) {
        GroupElement g{random_word(s, 12), false};
        GroupElement h{random_word(s, 12), false};
        GroupElement k{random_word(s, 12), false};
        CHECK(mul(mul(g, h), k) == mul(g, mul(h, k)));
        CHECK(mul(g, inv(g)).is_identity());
        auto [core, conj] = cyclic_reduce(g);
        CHECK(mul(conj, mul(core, inv(conj))) == g);
        CHECK(core.word.is_cyclically_reduced());
    }
}

TEST_CASE("shortlex order is a strict total order on small balls") {
    Sampler s(7);
    for (int i = 0; i < 200; ++i) {
        Word a = random_word(s, 6), b = random_word(s, 6);
        if (a == b) {
            CHECK(!a.shortlex_less(b));
            continue;
        }
        CHECK(a.shortlex_less(b) != b.shortlex_less(a));
    }
}
