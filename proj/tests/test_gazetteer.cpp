#include <doctest.h>

#include "framekit/gazetteer.hpp"
#include "framekit/store.hpp"
#include "test_support.hpp"

using namespace framekit;

namespace {

Gazetteer two_entities() {
  Gazetteer gaz;
  gaz.add({"e1", EntityKind::Person, "Ieva Akuratere", {"I. Akuratere"}});
  gaz.add({"o1", EntityKind::Organization, "Rigas dome", {"Riga City Council"}});
  return gaz;
}

}  // namespace

TEST_CASE("gazetteer TSV loads with alias index") {
  framekit::test::TempDir tmp("gaz");
  framekit::test::write_file(tmp.file("g.tsv"),
                             "e1\tPerson\tIeva Akuratere\tI. Akuratere|Akuratere\n"
                             "o1\tOrganization\tRigas dome\t\n");
  Gazetteer gaz = load_gazetteer(tmp.file("g.tsv"));
  CHECK(gaz.size() == 2);
  CHECK(gaz.lookup_alias("Ieva Akuratere").size() == 1);
  CHECK(gaz.lookup_alias("I. Akuratere").size() == 1);
  CHECK(gaz.lookup_alias("akuratere").size() == 1);  // case fold default
  CHECK(gaz.lookup_alias("Rigas dome").size() == 1);
  CHECK(gaz.lookup_alias("nobody").empty());
}

TEST_CASE("shared aliases become ambiguity sets") {
  Gazetteer gaz;
  gaz.add({"a", EntityKind::Person, "John Smith", {"J. Smith"}});
  gaz.add({"b", EntityKind::Person, "Jane Smith", {"J. Smith"}});
  CHECK(gaz.lookup_alias("J. Smith").size() == 2);
}

TEST_CASE("duplicate ids and empty canonicals are rejected") {
  Gazetteer gaz;
  gaz.add({"a", EntityKind::Person, "X Y", {}});
  CHECK_THROWS_AS(gaz.add({"a", EntityKind::Person, "Z", {}}), FormatError);
  CHECK_THROWS_AS(gaz.add({"b", EntityKind::Person, "", {}}), FormatError);
}

TEST_CASE("empty gazetteer leaves every mention unidentified") {
  Gazetteer gaz;
  Filler f = link_mention("Ieva Akuratere", FillerKind::PersonEntity, gaz);
  CHECK_FALSE(f.linked);
  CHECK(f.text == "Ieva Akuratere");
}

TEST_CASE("unique alias match links the mention") {
  Gazetteer gaz = two_entities();
  Filler f = link_mention("Ieva Akuratere", FillerKind::PersonEntity, gaz);
  CHECK(f.linked);
  CHECK(f.entity_id == "e1");

  // normalization: stray spacing and case still hit
  Filler g = link_mention("  ieva   akuratere ", FillerKind::PersonEntity, gaz);
  CHECK(g.linked);
}

TEST_CASE("mentions without any alias stay unidentified strings") {
  Gazetteer gaz = two_entities();
  Filler f = link_mention("a soloist", FillerKind::PersonEntity, gaz);
  CHECK_FALSE(f.linked);
  CHECK(f.text == "a soloist");
}

TEST_CASE("expected kind restricts the candidates") {
  Gazetteer gaz = two_entities();
  CHECK_FALSE(link_mention("Ieva Akuratere", FillerKind::OrganizationEntity, gaz).linked);
  CHECK(link_mention("Ieva Akuratere", FillerKind::AnyEntity, gaz).linked);
  CHECK_FALSE(link_mention("Ieva Akuratere", FillerKind::String, gaz).linked);
}

TEST_CASE("ambiguity resolves by stored instance counts, tie stays unidentified") {
  Gazetteer gaz;
  gaz.add({"a", EntityKind::Person, "John Smith", {"J. Smith"}});
  gaz.add({"b", EntityKind::Person, "Jane Smith", {"J. Smith"}});

  struct FakeUsage : EntityUsage {
    std::int64_t a = 0;
    std::int64_t b = 0;
    FakeUsage(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {}
    std::int64_t instance_count(const std::string& id) const override {
      return id == "a" ? a : b;
    }
  };

  FakeUsage usage(7, 2);
  Filler f = link_mention("J. Smith", FillerKind::PersonEntity, gaz, &usage);
  CHECK(f.linked);
  CHECK(f.entity_id == "a");

  // monotone: growing the winner's count never flips the decision
  usage.a = 70;
  CHECK(link_mention("J. Smith", FillerKind::PersonEntity, gaz, &usage).entity_id == "a");

  FakeUsage tie(3, 3);
  CHECK_FALSE(link_mention("J. Smith", FillerKind::PersonEntity, gaz, &tie).linked);

  // no usage data at all: tie at zero, unidentified
  CHECK_FALSE(link_mention("J. Smith", FillerKind::PersonEntity, gaz).linked);
}

TEST_CASE("case folding is configurable") {
  NormalizeConfig no_fold{.case_fold = false};
  Gazetteer gaz(no_fold);
  gaz.add({"e1", EntityKind::Person, "Ieva Akuratere", {}});
  CHECK(gaz.lookup_alias("ieva akuratere").empty());
  CHECK(gaz.lookup_alias("Ieva Akuratere").size() == 1);
}
