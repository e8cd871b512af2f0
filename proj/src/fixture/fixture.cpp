// Copyright (c) 2026 The LuxGen Toolkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "luxgen/fixture/fixture.hpp"

#include "luxgen/common/files.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/common/text.hpp"
#include "luxgen/corpus/document.hpp"
#include "luxgen/corpus/store.hpp"

#include <json.hpp>

#include <array>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace luxgen::fixture {

namespace {

using corpus::Domain;
using corpus::Language;
using corpus::RecordFormat;
using nlohmann::json;

struct Lexicon {
    std::vector<std::string> function_words;
    std::vector<std::string> nouns;
    std::vector<std::string> adjectives;
    std::vector<std::string> verbs;
    std::vector<std::string> places;
    std::vector<std::string> kinds;  ///< heads of short descriptions
    std::vector<std::string> praise;
    std::vector<std::string> scorn;
};

const Lexicon &lexicon(Language language) {
    static const Lexicon lb{
        {"de", "an", "mat", "fir", "vun", "op", "iwwer", "no", "bei", "och", "awer", "well", "dass", "eng", "en",
         "déi", "den", "dem", "d'", "et", "sech", "net", "méi"},
        {"Regierung", "Stad", "Schoul", "Wieder", "Zuch", "Gemeng", "Minister", "Chamber", "Projet", "Joer", "Land",
         "Leit", "Kanner", "Aarbecht", "Wunneng", "Präis", "Police", "Accident", "Autobunn", "Match", "Concert",
         "Budget", "Steier", "Spidol", "Dokter", "Klima", "Reen", "Bus", "Tram", "Velo", "Bréck", "Strooss",
         "Gesetz", "Verkéier", "Schüler", "Fräiwëlleger", "Kultur", "Musée", "Bibliothéik", "Hierscht"},
        {"nei", "grouss", "kleng", "gutt", "wichteg", "séier", "al", "schéin", "schwéier", "liicht", "staark",
         "éischt", "lescht", "national", "lokal"},
        {"ass", "sinn", "huet", "hunn", "gëtt", "kritt", "mécht", "plangt", "bleift", "kënnt", "stellt", "freet",
         "decidéiert", "diskutéiert", "investéiert", "renovéiert"},
        {"Lëtzebuerg", "Esch", "Diddeleng", "Ettelbréck", "Wolz", "Réimech", "Gréiwemaacher", "Clierf",
         "Dikrech", "Mamer", "Stroossen", "Péiteng"},
        {"Stad", "Uertschaft", "Floss", "Bierg", "Schrëftsteller", "Sängerin", "Fussballspiller", "Kierch",
         "Schlass", "Zeitung", "Band", "Politiker"},
        {"Super", "Bravo", "Genial", "Richteg", "Wonnerbar", "Merci"},
        {"Skandal", "Blödsinn", "Katastroph", "Lächerlech", "Schued", "Frechheet"},
    };
    static const Lexicon de{
        {"der", "die", "das", "und", "mit", "für", "von", "auf", "über", "nach", "bei", "auch", "aber", "weil",
         "dass", "eine", "ein", "den", "dem", "nicht", "mehr"},
        {"Regierung", "Stadt", "Schule", "Wetter", "Zug", "Gemeinde", "Minister", "Kammer", "Projekt", "Jahr",
         "Land", "Leute", "Kinder", "Arbeit", "Wohnung", "Preis", "Polizei", "Unfall", "Autobahn", "Spiel",
         "Konzert", "Haushalt", "Steuer", "Krankenhaus", "Arzt", "Klima", "Regen", "Brücke", "Straße", "Gesetz"},
        {"neu", "groß", "klein", "gut", "wichtig", "schnell", "alt", "schön", "schwer", "leicht", "stark"},
        {"ist", "sind", "hat", "haben", "wird", "bekommt", "macht", "plant", "bleibt", "kommt", "stellt",
         "fragt", "entscheidet", "diskutiert"},
        {"Luxemburg", "Esch", "Düdelingen", "Ettelbrück", "Wiltz", "Remich", "Grevenmacher", "Trier", "Saarbrücken"},
        {"Stadt", "Ortschaft", "Fluss", "Berg", "Schriftsteller", "Sängerin", "Kirche", "Schloss", "Zeitung"},
        {"Super", "Bravo", "Genial", "Richtig", "Danke"},
        {"Skandal", "Unsinn", "Katastrophe", "Lächerlich", "Frechheit"},
    };
    static const Lexicon fr{
        {"le", "la", "les", "et", "avec", "pour", "de", "sur", "après", "chez", "aussi", "mais", "parce", "que",
         "une", "un", "des", "du", "ne", "pas", "plus"},
        {"gouvernement", "ville", "école", "météo", "train", "commune", "ministre", "chambre", "projet", "année",
         "pays", "gens", "enfants", "travail", "logement", "prix", "police", "accident", "autoroute", "match",
         "concert", "budget", "impôt", "hôpital", "médecin", "climat", "pluie", "pont", "rue", "loi"},
        {"nouveau", "grand", "petit", "bon", "important", "rapide", "vieux", "beau", "difficile", "léger", "fort"},
        {"est", "sont", "a", "ont", "devient", "reçoit", "fait", "prévoit", "reste", "vient", "pose", "demande",
         "décide", "discute"},
        {"Luxembourg", "Esch", "Dudelange", "Ettelbruck", "Wiltz", "Remich", "Grevenmacher", "Metz", "Arlon"},
        {"ville", "localité", "rivière", "montagne", "écrivain", "chanteuse", "église", "château", "journal"},
        {"Super", "Bravo", "Génial", "Exact", "Merci"},
        {"Scandale", "Absurde", "Catastrophe", "Ridicule", "Honte"},
    };
    switch (language) {
        case Language::de: return de;
        case Language::fr: return fr;
        default: return lb;
    }
}

/// First `n` words of `text` without sentence punctuation.
std::string leading_words(const std::string &text, std::size_t n) {
    std::string out;
    std::size_t words = 0;
    for (char ch : text) {
        if (ch == '.' || ch == '?') break;
        if (ch == ' ' && ++words == n) break;
        out += ch;
    }
    return out;
}

class Writer {
public:
    Writer(Language language, Rng &rng) : lex_(lexicon(language)), rng_(rng) {}

    const std::string &pick(const std::vector<std::string> &pool) { return pool[rng_.below(pool.size())]; }

    std::string word() {
        const auto r = rng_.below(10);
        if (r < 4) return pick(lex_.function_words);
        if (r < 7) return pick(lex_.nouns);
        if (r < 8) return pick(lex_.adjectives);
        if (r < 9) return pick(lex_.verbs);
        return pick(lex_.places);
    }

    std::string sentence(std::size_t min_words, std::size_t max_words) {
        const std::size_t n = min_words + rng_.below(max_words - min_words + 1);
        std::string s = pick(lex_.nouns);
        s += ' ';
        s += pick(lex_.verbs);
        for (std::size_t i = 2; i < n; ++i) {
            s += ' ';
            s += word();
        }
        s += rng_.below(8) == 0 ? "?" : ".";
        return s;
    }

    std::string paragraph(std::size_t sentences) {
        std::string p;
        for (std::size_t i = 0; i < sentences; ++i) {
            if (i) p += ' ';
            p += sentence(5, 12);
        }
        return p;
    }

    const Lexicon &lex() const { return lex_; }
    Rng &rng() { return rng_; }

private:
    const Lexicon &lex_;
    Rng &rng_;
};

struct Emitted {
    std::string file;
    Language language;
    Domain domain;
    std::string source;
    RecordFormat format;
    std::size_t records;
};

class FixtureBuilder {
public:
    FixtureBuilder(std::filesystem::path dir, const FixtureOptions &options)
        : dir_(std::move(dir)), options_(options) {}

    void plain(Language lang, Domain domain, std::size_t n) {
        Rng rng(stream_seed(lang, domain));
        Writer w(lang, rng);
        std::vector<std::string> lines;
        for (std::size_t i = 0; i < n; ++i) {
            std::string line = domain == Domain::chat ? w.sentence(2, 6) : w.paragraph(1 + rng.below(3));
            // a few lines in decomposed form exercise normalization
            if (lang == Language::lb && i % 25 == 3) line += " Cafe\xCC\x81 Re\xCC\x81sidence.";
            lines.push_back(std::move(line));
        }
        if (domain == Domain::web && lang == Language::lb && n > 10) {
            lines[7] = lines[3];  // an exact duplicate for dedupe
        }
        emit(lang, domain, RecordFormat::plain_lines, ".txt", [&](std::ostream &out) {
            for (const auto &l : lines) out << l << '\n';
        }, lines.size());
    }

    void delimited(Language lang, Domain domain, std::size_t n) {
        Rng rng(stream_seed(lang, domain));
        Writer w(lang, rng);
        emit(lang, domain, RecordFormat::delimited_records, ".tsv", [&](std::ostream &out) {
            out << "speaker\ttext\n";
            for (std::size_t i = 0; i < n; ++i) {
                const std::string text =
                    domain == Domain::dictionary ? w.pick(w.lex().nouns) + ": " + w.sentence(4, 8) : w.paragraph(2);
                out << "S" << (i % 7) << '\t' << text::escape_field(text) << '\n';
            }
        }, n);
    }

    /// Returns the record ids the store will assign ("<source>-<ordinal>").
    std::vector<std::string> news(Language lang, std::size_t n) {
        Rng rng(stream_seed(lang, Domain::news));
        Writer w(lang, rng);
        std::vector<std::string> ids;
        emit(lang, Domain::news, RecordFormat::structured_records, ".jsonl", [&](std::ostream &out) {
            for (std::size_t i = 0; i < n; ++i) {
                std::string body = w.paragraph(3 + rng.below(3));
                const std::string title = w.pick(w.lex().places) + ": " + leading_words(body, 4);
                if (rng.below(4) == 0) body = title + " " + body;
                json j = {{"text", body}};
                if (i % 29 != 11) j["title"] = title;  // occasional untitled record
                out << j.dump() << '\n';
                ids.push_back(source_name(lang, Domain::news) + "-" + std::to_string(i));
            }
        }, n);
        return ids;
    }

    void wiki(Language lang, std::size_t n) {
        Rng rng(stream_seed(lang, Domain::wiki));
        Writer w(lang, rng);
        emit(lang, Domain::wiki, RecordFormat::structured_records, ".jsonl", [&](std::ostream &out) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::string kind = w.pick(w.lex().kinds);
                const std::string place = w.pick(w.lex().places);
                const std::string description = kind + " " + w.pick(w.lex().function_words) + " " + place;
                const std::string text = w.pick(w.lex().nouns) + " " + w.pick(w.lex().verbs) + " " + description +
                                         ". " + w.paragraph(2 + rng.below(2));
                json j = {{"text", text}};
                if (i % 17 != 5) j["short_description"] = description;
                out << j.dump() << '\n';
            }
        }, n);
    }

    void comments(Language lang, const std::vector<std::string> &article_ids) {
        Rng rng(stream_seed(lang, Domain::comments));
        Writer w(lang, rng);
        std::size_t count = 0;
        emit(lang, Domain::comments, RecordFormat::delimited_records, ".tsv", [&](std::ostream &out) {
            out << "text\tarticle_id\tupvotes\tdownvotes\tmoderation_status\n";
            for (std::size_t a = 0; a < article_ids.size(); ++a) {
                if (a % 5 == 4) continue;  // uncommented article
                const std::size_t k = 1 + rng.below(5);
                for (std::size_t c = 0; c < k; ++c) {
                    const bool published = rng.uniform() < 0.8;
                    // the opening word hints at the label, with some noise
                    const bool scornful = published ? rng.uniform() < 0.1 : rng.uniform() < 0.85;
                    std::string text = (scornful ? w.pick(w.lex().scorn) : w.pick(w.lex().praise)) + "! " +
                                       w.sentence(3, 9);
                    std::string up, down;
                    if (published && rng.below(6) != 0) {
                        up = std::to_string(rng.below(40));
                        down = std::to_string(rng.below(40));
                    }
                    out << text::escape_field(text) << '\t' << article_ids[a] << '\t' << up << '\t' << down << '\t'
                        << (published ? "published" : "archived") << '\n';
                    ++count;
                }
            }
            // one comment pointing at an article outside the corpus
            out << text::escape_field(w.sentence(3, 6)) << "\tmissing-article-0\t3\t1\tpublished\n";
            ++count;
        }, 0);
        emitted_.back().records = count;
    }

    FixtureSummary finish() {
        json inputs = json::array();
        FixtureSummary s;
        for (const auto &e : emitted_) {
            inputs.push_back({{"path", e.file},
                              {"language", corpus::to_string(e.language)},
                              {"domain", corpus::to_string(e.domain)},
                              {"source", e.source},
                              {"format", corpus::to_string(e.format)}});
            ++s.files;
            s.records += e.records;
        }
        s.manifest = dir_ / "manifest.json";
        files::write_atomic(s.manifest, [&](std::ostream &out) { out << json{{"inputs", inputs}}.dump(2) << '\n'; });
        return s;
    }

private:
    std::filesystem::path dir_;
    FixtureOptions options_;
    std::vector<Emitted> emitted_;

    std::uint64_t stream_seed(Language lang, Domain domain) const {
        return derive_seed(options_.seed, std::string(corpus::to_string(lang)) + "/" + std::string(corpus::to_string(domain)));
    }

    static std::string source_name(Language lang, Domain domain) {
        return std::string(corpus::to_string(domain)) + "-" + std::string(corpus::to_string(lang));
    }

    void emit(Language lang, Domain domain, RecordFormat format, const char *ext,
              const std::function<void(std::ostream &)> &body, std::size_t records) {
        const std::string source = source_name(lang, domain);
        const std::string file = source + ext;
        files::write_atomic(dir_ / file, body);
        emitted_.push_back({file, lang, domain, source, format, records});
    }
};

}  // namespace

FixtureSummary write_fixture(const std::filesystem::path &dir, const FixtureOptions &options) {
    FixtureBuilder b(dir, options);
    const std::size_t n = options.lines_per_domain;

    b.plain(Language::lb, Domain::radio, n);
    const auto lb_articles = b.news(Language::lb, options.articles);
    b.delimited(Language::lb, Domain::parliament, n);
    b.plain(Language::lb, Domain::web, n);
    b.wiki(Language::lb, options.wiki_pages);
    b.comments(Language::lb, lb_articles);
    b.plain(Language::lb, Domain::chat, n);
    b.delimited(Language::lb, Domain::dictionary, n / 2);

    b.plain(Language::de, Domain::radio, 2 * n);
    const auto de_articles = b.news(Language::de, 2 * options.articles);
    b.delimited(Language::de, Domain::parliament, 2 * n);
    b.plain(Language::de, Domain::web, 3 * n);
    b.wiki(Language::de, 2 * options.wiki_pages);
    b.comments(Language::de, de_articles);
    b.delimited(Language::de, Domain::dictionary, n);

    const auto fr_articles = b.news(Language::fr, 2 * options.articles);
    b.delimited(Language::fr, Domain::parliament, 2 * n);
    b.plain(Language::fr, Domain::web, 3 * n);
    b.wiki(Language::fr, 2 * options.wiki_pages);
    b.comments(Language::fr, fr_articles);
    b.delimited(Language::fr, Domain::dictionary, n);

    return b.finish();
}

}  // namespace luxgen::fixture
