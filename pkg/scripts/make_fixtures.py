"""Regenerate the bundled JSON fixtures under src/kae/data/fixtures/.

conf_mini is the evaluation pair. biblio_mini and event_mini are separate
training pairs from neighbouring domains, so the bundled models never see
the evaluation fixture.
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "kae" / "data" / "fixtures"


def kg(name, etypes, properties, entities=()):
    return {
        "name": name,
        "etypes": [
            {"id": i, "label": label, "parent": parent, "associations": assoc}
            for i, label, parent, assoc in etypes
        ],
        "properties": [{"id": p, "label": label} for p, label in properties],
        "entities": [
            {"id": i, "label": i, "etypes": types, "properties": props} for i, types, props in entities
        ],
    }


def plus(*props, **weights):
    out = {p: 1 for p in props}
    out.update(weights)
    return out


def gold(etype_pairs, entity_pairs=()):
    return {
        "pairs": [{"ref": r, "cand": c, "kind": "etype"} for r, c in etype_pairs]
        + [{"ref": r, "cand": c, "kind": "entity"} for r, c in entity_pairs]
    }


def camel_props(*ids):
    return [(p, p) for p in ids]


CONF_REF = kg(
    "conf-ref",
    [
        ("Person", "Person", None, plus("name", "email", "affiliation", "biography")),
        ("Author", "Author", "Person", plus("name", "authorOf", "affiliation", chairsSession=-1)),
        ("Chairman", "Chairman", "Person", plus("name", "chairsSession", "email")),
        ("Document", "Document", None, plus("title", "publicationYear", "pageCount", "description")),
        ("Paper", "Paper", "Document", plus("title", "abstract", "hasTopic", "acceptanceStatus", "keyword")),
        ("SubjectArea", "SubjectArea", None, plus("keyword", "description")),
    ],
    camel_props(
        "name", "email", "affiliation", "biography", "authorOf", "chairsSession", "title",
        "abstract", "publicationYear", "pageCount", "hasTopic", "acceptanceStatus", "keyword",
        "description",
    ),
)

CONF_CAND = kg(
    "conf-cand",
    [
        ("Person", "Person", None, plus("name", "email", "affiliation", "homepage")),
        ("Chair", "Chair", "Person", plus("name", "chairsSession", "email")),
        ("Contribution", "Contribution", None, plus("title", "abstract", "hasTopic", "submissionDate", "keyword")),
        ("Poster", "Poster", "Contribution", plus("title", "posterBoard")),
        ("Topic", "Topic", None, plus("description", "keyword")),
        ("Publisher", "Publisher", None, plus("imprint", "headquarters")),
    ],
    camel_props(
        "name", "email", "affiliation", "homepage", "chairsSession", "title", "abstract",
        "hasTopic", "submissionDate", "posterBoard", "description", "keyword", "imprint",
        "headquarters",
    ),
    [
        ("ada", ["Person"], ["name", "email", "affiliation"]),
        ("grace", ["Person"], ["name", "email", "affiliation", "homepage"]),
        ("alan", ["Person"], ["name", "affiliation", "email"]),
        ("barbara", ["Chair"], ["name", "chairsSession", "email"]),
        ("edsger", ["Chair"], ["name", "chairsSession"]),
        ("c101", ["Contribution"], ["title", "abstract", "hasTopic"]),
        ("c102", ["Contribution"], ["title", "abstract", "hasTopic", "submissionDate"]),
        ("c103", ["Contribution"], ["title", "abstract"]),
        ("p201", ["Poster"], ["title", "hasTopic", "posterBoard"]),
        ("p202", ["Poster"], ["title", "abstract", "posterBoard"]),
        ("semweb", ["Topic"], ["description", "keyword"]),
        ("ml", ["Topic"], ["description"]),
        ("acm", ["Publisher"], ["imprint", "headquarters"]),
    ],
)

CONF_GOLD = gold(
    [("Person", "Person"), ("Chairman", "Chair"), ("Paper", "Contribution"), ("SubjectArea", "Topic")],
    [
        ("Person", "ada"), ("Person", "grace"), ("Person", "alan"),
        ("Chairman", "barbara"), ("Chairman", "edsger"),
        ("Paper", "c101"), ("Paper", "c102"), ("Paper", "c103"), ("Paper", "p201"), ("Paper", "p202"),
        ("SubjectArea", "semweb"), ("SubjectArea", "ml"),
    ],
)

BIBLIO_REF = kg(
    "biblio-ref",
    [
        ("Individual", "Individual", None, plus("fullName", "homepage", "email", "nationality")),
        ("Writer", "Writer", "Individual", plus("fullName", "wrote", "birthYear")),
        ("Editor", "Editor", "Individual", plus("fullName", "edits", "email", wrote=-1)),
        ("Publication", "Publication", None, plus("title", "year", "pages", "summary")),
        ("Article", "Article", "Publication", plus("title", "summary", "doi", "keyword")),
        ("Monograph", "Monograph", "Publication", plus("title", "isbn", "pages")),
        ("Field", "Field", None, plus("description", "keyword", "parentField")),
    ],
    camel_props(
        "fullName", "homepage", "email", "nationality", "wrote", "birthYear", "edits", "title",
        "year", "pages", "summary", "doi", "keyword", "isbn", "description", "parentField",
    ),
)

BIBLIO_CAND = kg(
    "biblio-cand",
    [
        ("Human", "Human", None, plus("fullName", "email", "homepage", "orcid")),
        ("Author", "Author", "Human", plus("fullName", "wrote", "orcid")),
        ("Referee", "Referee", "Human", plus("fullName", "reviews")),
        ("Manuscript", "Manuscript", None, plus("title", "summary", "doi", "submittedOn", "keyword")),
        ("Report", "Report", "Manuscript", plus("title", "institution")),
        ("Theme", "Theme", None, plus("description", "keyword")),
        ("Venue", "Venue", None, plus("city", "capacity")),
    ],
    camel_props(
        "fullName", "email", "homepage", "orcid", "wrote", "reviews", "title", "summary", "doi",
        "submittedOn", "keyword", "institution", "description", "city", "capacity",
    ),
    [
        ("h1", ["Human"], ["fullName", "email", "homepage"]),
        ("h2", ["Human"], ["fullName", "email", "orcid"]),
        ("h3", ["Human"], ["fullName", "homepage"]),
        ("a1", ["Author"], ["fullName", "wrote", "orcid"]),
        ("a2", ["Author"], ["fullName", "wrote"]),
        ("r1", ["Referee"], ["fullName", "reviews"]),
        ("m1", ["Manuscript"], ["title", "summary", "doi"]),
        ("m2", ["Manuscript"], ["title", "summary", "keyword", "submittedOn"]),
        ("m3", ["Manuscript"], ["title", "doi", "keyword"]),
        ("t1", ["Report"], ["title", "institution", "summary"]),
        ("th1", ["Theme"], ["description", "keyword"]),
        ("th2", ["Theme"], ["description"]),
        ("v1", ["Venue"], ["city", "capacity"]),
    ],
)

BIBLIO_GOLD = gold(
    [("Individual", "Human"), ("Writer", "Author"), ("Article", "Manuscript"), ("Field", "Theme")],
    [
        ("Individual", "h1"), ("Individual", "h2"), ("Individual", "h3"),
        ("Writer", "a1"), ("Writer", "a2"),
        ("Article", "m1"), ("Article", "m2"), ("Article", "m3"), ("Article", "t1"),
        ("Field", "th1"), ("Field", "th2"),
    ],
)

EVENT_REF = kg(
    "event-ref",
    [
        ("Participant", "Participant", None, plus("name", "email", "affiliation", "badge")),
        ("Speaker", "Speaker", "Participant", plus("name", "talkTitle", "email")),
        ("Organizer", "Organizer", "Participant", plus("name", "organizes", "phone", talkTitle=-1)),
        ("Presentation", "Presentation", None, plus("title", "abstract", "slot", "room")),
        ("Demo", "Demo", "Presentation", plus("title", "demoUrl", "room")),
        ("Theme", "Theme", None, plus("description", "keyword", "title")),
    ],
    camel_props(
        "name", "email", "affiliation", "badge", "talkTitle", "organizes", "phone", "title",
        "abstract", "slot", "room", "demoUrl", "description", "keyword",
    ),
)

EVENT_CAND = kg(
    "event-cand",
    [
        ("Attendee", "Attendee", None, plus("name", "email", "affiliation", "dietaryNeeds")),
        ("Presenter", "Speaker", "Attendee", plus("name", "talkTitle", "affiliation")),
        ("Chairperson", "Chairperson", "Attendee", plus("name", "organizes", "phone")),
        ("Member", "Member", "Attendee", plus("name", "membershipId")),
        ("Presentation", "Presentation", None, plus("title", "abstract", "slot")),
        ("Poster", "Poster", "Presentation", plus("title", "posterBoard")),
        ("Subject", "Subject", None, plus("description", "keyword")),
        ("Sponsor", "Sponsor", None, plus("budget", "logo")),
    ],
    camel_props(
        "name", "email", "affiliation", "dietaryNeeds", "talkTitle", "organizes", "phone",
        "membershipId", "title", "abstract", "slot", "posterBoard", "description", "keyword",
        "budget", "logo",
    ),
    [
        ("e1", ["Attendee"], ["name", "email", "affiliation"]),
        ("e2", ["Attendee"], ["name", "email", "dietaryNeeds", "affiliation"]),
        ("e3", ["Presenter"], ["name", "talkTitle", "email"]),
        ("e4", ["Presenter"], ["name", "talkTitle"]),
        ("e5", ["Chairperson"], ["name", "organizes", "phone"]),
        ("e6", ["Chairperson"], ["name", "organizes"]),
        ("e7", ["Member"], ["name", "membershipId"]),
        ("s1", ["Presentation"], ["title", "abstract", "slot"]),
        ("s2", ["Presentation"], ["title", "slot"]),
        ("s3", ["Poster"], ["title", "abstract", "posterBoard"]),
        ("k1", ["Subject"], ["description", "keyword"]),
        ("k2", ["Subject"], ["keyword"]),
        ("b1", ["Sponsor"], ["budget", "logo"]),
    ],
)

EVENT_GOLD = gold(
    [
        ("Participant", "Attendee"), ("Speaker", "Presenter"), ("Organizer", "Chairperson"),
        ("Presentation", "Presentation"), ("Theme", "Subject"),
    ],
    [
        ("Participant", "e1"), ("Participant", "e2"), ("Speaker", "e3"), ("Speaker", "e4"),
        ("Organizer", "e5"), ("Organizer", "e6"), ("Participant", "e7"),
        ("Presentation", "s1"), ("Presentation", "s2"), ("Presentation", "s3"),
        ("Theme", "k1"), ("Theme", "k2"),
    ],
)

UNI_REF = kg(
    "uni-ref",
    [
        ("Person", "Person", None, plus("name", "email", "phone", "office")),
        ("Professor", "Professor", "Person", plus("name", "email", "teaches", "office")),
        ("Student", "Student", "Person", plus("name", "studentId", "enrolledIn")),
        ("Course", "Course", None, plus("title", "credits", "syllabus")),
        ("Seminar", "Seminar", "Course", plus("title", "credits", "room")),
        ("Thesis", "Thesis", None, plus("title", "abstract", "supervisor")),
    ],
    camel_props(
        "name", "email", "phone", "office", "teaches", "studentId", "enrolledIn", "title",
        "credits", "syllabus", "room", "abstract", "supervisor",
    ),
)

UNI_CAND = kg(
    "uni-cand",
    [
        ("Staff", "Staff", None, plus("name", "email", "phone", "office")),
        ("Lecturer", "Lecturer", "Staff", plus("name", "teaches", "email")),
        ("Pupil", "Pupil", None, plus("name", "matriculation", "enrolledIn")),
        ("Module", "Module", None, plus("title", "credits", "syllabus")),
        ("Dissertation", "Dissertation", None, plus("title", "abstract", "supervisor")),
        ("Department", "Department", None, plus("deptName", "budget")),
    ],
    camel_props(
        "name", "email", "phone", "office", "teaches", "matriculation", "enrolledIn", "title",
        "credits", "syllabus", "abstract", "supervisor", "deptName", "budget",
    ),
    [
        ("s1", ["Staff"], ["name", "email", "phone"]),
        ("s2", ["Staff"], ["name", "email", "office"]),
        ("s3", ["Staff"], ["name", "phone", "office"]),
        ("l1", ["Lecturer"], ["name", "teaches", "email"]),
        ("l2", ["Lecturer"], ["name", "teaches"]),
        ("u1", ["Pupil"], ["name", "enrolledIn"]),
        ("u2", ["Pupil"], ["name", "matriculation", "enrolledIn"]),
        ("m1", ["Module"], ["title", "credits"]),
        ("m2", ["Module"], ["title", "syllabus", "credits"]),
        ("d1", ["Dissertation"], ["title", "abstract", "supervisor"]),
        ("d2", ["Dissertation"], ["title", "supervisor"]),
        ("x1", ["Department"], ["deptName", "budget"]),
    ],
)

UNI_GOLD = gold(
    [
        ("Person", "Staff"), ("Professor", "Lecturer"), ("Student", "Pupil"),
        ("Course", "Module"), ("Thesis", "Dissertation"),
    ],
    [
        ("Person", "s1"), ("Person", "s2"), ("Person", "s3"), ("Professor", "l1"), ("Professor", "l2"),
        ("Student", "u1"), ("Student", "u2"), ("Course", "m1"), ("Course", "m2"),
        ("Thesis", "d1"), ("Thesis", "d2"),
    ],
)


# two-etype reference for hand-traced extension checks
EXT_REF = kg(
    "ext-ref",
    [
        ("Person", "Person", None, plus("name", "email", "affiliation")),
        ("Paper", "Paper", None, plus("title", "abstract")),
    ],
    camel_props("name", "email", "affiliation", "title", "abstract"),
    [("turing", ["Person"], ["name", "email"])],
)

EXT_CAND = kg(
    "ext-cand",
    [("Writer", "Writer", None, plus("name", "orcid"))],
    camel_props("name", "orcid"),
    [("w1", ["Writer"], ["name", "orcid"]), ("w2", ["Writer"], ["name"])],
)

EXT_CONTACT_CAND = kg(
    "ext-contact-cand",
    [
        ("Writer", "Writer", None, plus("name", "orcid")),
        ("Contact", "Contact", None, plus("name", "email", "affiliation")),
    ],
    camel_props("name", "orcid", "email", "affiliation"),
    [
        ("w1", ["Writer"], ["name", "orcid"]),
        ("k1", ["Contact"], ["name", "email", "affiliation"]),
    ],
)


FIXTURES = {
    "conf_mini_ref.json": CONF_REF,
    "conf_mini_cand.json": CONF_CAND,
    "conf_mini_gold.json": CONF_GOLD,
    "biblio_mini_ref.json": BIBLIO_REF,
    "biblio_mini_cand.json": BIBLIO_CAND,
    "biblio_mini_gold.json": BIBLIO_GOLD,
    "event_mini_ref.json": EVENT_REF,
    "event_mini_cand.json": EVENT_CAND,
    "event_mini_gold.json": EVENT_GOLD,
    "uni_mini_ref.json": UNI_REF,
    "uni_mini_cand.json": UNI_CAND,
    "uni_mini_gold.json": UNI_GOLD,
    "ext_mini_ref.json": EXT_REF,
    "ext_mini_cand.json": EXT_CAND,
    "ext_contact_cand.json": EXT_CONTACT_CAND,
}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, doc in FIXTURES.items():
        (OUT / name).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
