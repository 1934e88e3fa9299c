#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypwalk {

/// A reduced word over the free-group alphabet a_1^±, ..., a_k^±.
///
/// Letters are signed 1-based generator indices: +i is a_i, -i is a_i^{-1}.
/// Every constructor and operation maintains free reduction (no adjacent
/// x x^{-1} pair), so two words are equal as group elements iff their letter
/// sequences are equal. The identity is the empty word.
class Word {
public:
    using Letter = std::int8_t;

    Word() = default;

    /// Builds a word from raw letters, freely reducing as it goes.
    static Word reduced(std::span<const Letter> letters) {
        Word w;
        w.ls_.reserve(letters.size());
        for (Letter l : letters) w.push(l);
        return w;
    }

    static Word from_letter(Letter l) {
        Word w;
        w.push(l);
        return w;
    }

    std::size_t size() const { return ls_.size(); }
    bool empty() const { return ls_.empty(); }
    Letter operator[](std::size_t i) const { return ls_[i]; }
    std::span<const Letter> letters() const { return ls_; }
    Letter back() const { return ls_.back(); }

    bool operator==(const Word&) const = default;

    /// Appends a single letter, cancelling against the current last letter.
    void push(Letter l) {
        if (!ls_.empty() && ls_.back() == static_cast<Letter>(-l)) {
            ls_.pop_back();
        } else {
            ls_.push_back(l);
        }
    }

    void pop() { ls_.pop_back(); }

    /// In-place reduced multiplication on the right: *this <- *this * rhs.
    void mul_inplace(const Word& rhs) {
        for (Letter l : rhs.ls_) push(l);
    }

    Word operator*(const Word& rhs) const {
        Word out = *this;
        out.ls_.reserve(out.size() + rhs.size());
        out.mul_inplace(rhs);
        return out;
    }

    Word inverse() const {
        Word out;
        out.ls_.reserve(size());
        for (auto it = ls_.rbegin(); it != ls_.rend(); ++it)
            out.ls_.push_back(static_cast<Letter>(-*it));
        return out;
    }

    Word prefix(std::size_t n) const {
        Word out;
        if (n > size()) n = size();
        out.ls_.assign(ls_.begin(), ls_.begin() + static_cast<std::ptrdiff_t>(n));
        return out;
    }

    Word pow(long long k) const {
        if (k < 0) return inverse().pow(-k);
        Word out;
        for (long long i = 0; i < k; ++i) out.mul_inplace(*this);
        return out;
    }

    /// Length of the longest common prefix with another reduced word.
    std::size_t common_prefix_len(const Word& other) const {
        std::size_t n = std::min(size(), other.size());
        std::size_t i = 0;
        while (i < n && ls_[i] == other.ls_[i]) ++i;
        return i;
    }

    /// Cyclic reduction: returns (core, conjugator) with
    /// *this == conjugator * core * conjugator^{-1} and core cyclically
    /// reduced. The core length is the translation length on the tree.
    std::pair<Word, Word> cyclic_reduced() const {
        std::size_t i = 0, j = size();
        while (i + 1 < j && ls_[i] == static_cast<Letter>(-ls_[j - 1])) {
            ++i;
            --j;
        }
        Word core, conj;
        core.ls_.assign(ls_.begin() + static_cast<std::ptrdiff_t>(i),
                        ls_.begin() + static_cast<std::ptrdiff_t>(j));
        conj.ls_.assign(ls_.begin(), ls_.begin() + static_cast<std::ptrdiff_t>(i));
        return {core, conj};
    }

    bool is_cyclically_reduced() const {
        return size() < 2 || ls_.front() != static_cast<Letter>(-ls_.back());
    }

    /// Shortlex order: by length, then by letter rank a < a^{-1} < b < ...
    /// Used wherever a canonical choice among words is needed.
    bool shortlex_less(const Word& other) const {
        if (size() != other.size()) return size() < other.size();
        for (std::size_t i = 0; i < size(); ++i) {
            int ra = letter_rank(ls_[i]), rb = letter_rank(other.ls_[i]);
            if (ra != rb) return ra < rb;
        }
        return false;
    }

    static int letter_rank(Letter l) {
        int idx = l > 0 ? l : -l;
        return 2 * (idx - 1) + (l < 0 ? 1 : 0);
    }

    /// Canonical text form: 'a'..'z' for generators, uppercase for inverses.
    /// The identity encodes as the empty string.
    std::string str() const {
        std::string s;
        s.reserve(size());
        for (Letter l : ls_)
            s.push_back(l > 0 ? static_cast<char>('a' + l - 1)
                              : static_cast<char>('A' - l - 1));
        return s;
    }

    /// Parses the text form; `max_rank` bounds the generator index. Rejects
    /// non-letter characters. Reduces the result.
    static std::optional<Word> parse(std::string_view text, int max_rank,
                                     std::string* error = nullptr) {
        Word w;
        for (char c : text) {
            Letter l;
            if (c >= 'a' && c <= 'z') {
                l = static_cast<Letter>(c - 'a' + 1);
            } else if (c >= 'A' && c <= 'Z') {
                l = static_cast<Letter>(-(c - 'A' + 1));
            } else {
                if (error) *error = std::string("invalid character '") + c + "' in word";
                return std::nullopt;
            }
            if ((l > 0 ? l : -l) > max_rank) {
                if (error) *error = std::string("letter '") + c + "' exceeds generator count";
                return std::nullopt;
            }
            w.push(l);
        }
        return w;
    }

    static bool letters_reduced(std::span<const Letter> letters) {
        for (std::size_t i = 1; i < letters.size(); ++i)
            if (letters[i] == static_cast<Letter>(-letters[i - 1])) return false;
        return true;
    }

    int max_index() const {
        int m = 0;
        for (Letter l : ls_) m = std::max(m, static_cast<int>(l > 0 ? l : -l));
        return m;
    }

private:
    std::vector<Letter> ls_;
};

/// Word metric on the free group: d(u, v) = |u^{-1} v|.
inline long long word_distance(const Word& u, const Word& v) {
    return static_cast<long long>(u.size() + v.size()) -
           2 * static_cast<long long>(u.common_prefix_len(v));
}

/// An element of the acting group: a free-group word plus an optional
/// central involution letter (used only by the F_2 x Z/2 model, where the
/// extra generator commutes with everything and squares to the identity).
struct GroupElement {
    Word word;
    bool flip = false;

    bool operator==(const GroupElement&) const = default;
    bool is_identity() const { return word.empty() && !flip; }
};

inline GroupElement mul(const GroupElement& g, const GroupElement& h) {
    return {g.word * h.word, g.flip != h.flip};
}

inline GroupElement inv(const GroupElement& g) {
    return {g.word.inverse(), g.flip};
}

inline GroupElement pow(const GroupElement& g, long long k) {
    return {g.word.pow(k), g.flip && (k % 2 != 0)};
}

/// Cyclic reduction of the free part; the central letter stays in the core.
/// Returns (core, conjugator) with g == conjugator * core * conjugator^{-1}.
inline std::pair<GroupElement, GroupElement> cyclic_reduce(const GroupElement& g) {
    auto [core, conj] = g.word.cyclic_reduced();
    return {GroupElement{core, g.flip}, GroupElement{conj, false}};
}

/// Text form of a group element; the involution letter renders as a
/// trailing 'c' (the F_2 x Z/2 convention with generators a, b, c).
inline std::string to_string(const GroupElement& g) {
    std::string s = g.word.str();
    if (g.flip) s.push_back('c');
    return s;
}

inline bool shortlex_less(const GroupElement& a, const GroupElement& b) {
    if (a.word == b.word) return a.flip < b.flip;
    return a.word.shortlex_less(b.word);
}

} // namespace hypwalk
