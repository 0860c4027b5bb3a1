#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifskit/model.hpp"
#include "ifskit/rng.hpp"

namespace ifskit {

using Letter = std::uint32_t;

// Finite sequence of map indices. Infinite words never appear as objects:
// every consumer works with a finite prefix drawn by sample_word, and the
// sampler is prefix-consistent, so a (seed, length) pair plays the role of
// an infinite word.
using Word = std::vector<Letter>;

// Drops the first `count` letters.
inline Word shift(const Word& word, std::size_t count = 1) {
    if (word.size() < count) {
        throw std::invalid_argument("shift: word of length " + std::to_string(word.size()) +
                                    " cannot be shifted " + std::to_string(count) + " times");
    }
    return Word(word.begin() + static_cast<Word::difference_type>(count), word.end());
}

inline Word reversed(const Word& word) {
    return Word(word.rbegin(), word.rend());
}

inline void validate_letters(const IfsModel& model, const Word& word) {
    for (Letter letter : word) {
        if (letter >= model.map_count()) {
            throw std::invalid_argument("word letter " + std::to_string(letter) +
                                        " out of range for a model with " +
                                        std::to_string(model.map_count()) + " maps");
        }
    }
}

// Product of the letter weights; 1 for the empty word.
inline double cylinder_weight(const IfsModel& model, const Word& word) {
    validate_letters(model, word);
    double product = 1.0;
    for (Letter letter : word) {
        product *= model.weight(letter);
    }
    return product;
}

// sup_n rho(a_n, b_n)/n with rho the discrete metric and positions 1-based.
inline double word_distance(const Word& a, const Word& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("word_distance: words must have equal length");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
            // positions are scanned in order, so the first mismatch dominates
            return 1.0 / static_cast<double>(i + 1);
        }
    }
    return 0.0;
}

// `length` i.i.d. letters with the model's weight law. Deterministic in
// (seed, length) and prefix-consistent: the length-n word is a prefix of
// the length-(n+1) word for the same seed.
inline Word sample_word(const IfsModel& model, std::uint64_t seed, std::size_t length) {
    SplitMix64 rng(seed);
    const std::vector<double>& weights = model.weights();
    Word word;
    word.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double u = rng.next_double();
        double cumulative = 0.0;
        Letter letter = static_cast<Letter>(weights.size() - 1);
        for (std::size_t k = 0; k < weights.size(); ++k) {
            cumulative += weights[k];
            if (u < cumulative) {
                letter = static_cast<Letter>(k);
                break;
            }
        }
        word.push_back(letter);
    }
    return word;
}

// Word for one trial of a Monte-Carlo run. Estimators and the attractor
// sampler all derive their words through this, so a test can re-create the
// exact word behind any reported trial.
inline Word trial_word(const IfsModel& model, std::uint64_t base_seed, std::uint64_t trial,
                       std::size_t length) {
    return sample_word(model, trial_seed(base_seed, trial), length);
}

// Odometer step through all words of a fixed length over `alphabet` letters;
// returns false when the word wraps back to all-zeros.
inline bool next_word(Word& word, std::size_t alphabet) {
    for (std::size_t i = word.size(); i-- > 0;) {
        if (++word[i] < alphabet) {
            return true;
        }
        word[i] = 0;
    }
    return false;
}

}  // namespace ifskit
