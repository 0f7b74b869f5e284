#!/usr/bin/env python3
"""Regenerate src/idpos/data/lexicon.tsv.

The lexicon is a frequency-ranked word list: one "word<TAB>penn-tag" entry
per line, duplicates allowed, earlier entries rank higher.  Closed-class
words are enumerated; open-class stems are inflected mechanically (plurals,
-s/-ed/-ing verb forms) plus a table of common irregular forms.  Nouns are
written before verbs so that noun/verb homographs (set, list, map) resolve
to the noun reading by default; the lexicon tagger prefers a verb reading
after a pronoun regardless of rank.
"""

from __future__ import annotations

from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "idpos" / "data" / "lexicon.tsv"

PRONOUNS_PRP = """
i you he she it we they me him her us them who
myself yourself himself herself itself ourselves themselves oneself
""".split()

PRONOUNS_PRPS = "my your his its our their mine yours hers ours theirs".split()

DETERMINERS = """
the a an this that these those which each every all both some any no
another such either neither
""".split()

PREPOSITIONS = """
of in for on with at by from into onto upon over before after between
during through within without across against along among around near off
past per since toward towards until via beside besides below beneath behind
inside outside amid despite except above under underneath
""".split()

CONJUNCTIONS = "and or but nor yet so whereas although because while".split()

MODALS = "can could may might must shall should will would".split()

ADVERBS = """
not very also only just now then here there always never often sometimes
rarely quickly slowly loudly quietly seriously impatiently really simply
directly fully safely lazily eagerly early late soon already still too
again once twice backwards forwards upward downward inward outward
recursively globally locally dynamically statically
""".split()

PARTICLES = "up down out back away".split()

NUMBER_WORDS = "zero one two three four five six seven eight nine ten eleven twelve".split()

# Verb stems: everyday English plus verbs common in identifier names.
VERBS = """
be have do say go get make know think take see come want look use find
give tell work call try ask need feel become leave put mean keep let begin
start show hear play run move like live believe hold bring happen write
provide sit stand lose pay meet include continue learn change lead
understand watch follow stop create speak read allow add spend grow open
walk win offer remember consider appear buy wait serve send expect build
stay fall cut reach kill remain suggest raise pass sell require report
decide pull return explain hope develop carry break receive agree support
hit produce eat cover catch draw choose listen realize close involve fill
jump spin insert remove delete update compute calculate parse load save
store fetch push pop peek merge sort search scan check validate verify
initialize init allocate alloc free release lock unlock notify emit
dispatch handle process render paint refresh reset clamp convert copy
clone swap bind attach detach connect disconnect encode decode encrypt
decrypt compress decompress flush iterate filter reduce apply invoke
execute register unregister subscribe publish resolve reject assert log
print format trim strip split join append prepend replace match clean
destroy construct enable disable toggle select deselect expand collapse
zoom scroll drag drop paste undo redo commit rollback lookup traverse
visit accept emit recurse terminate abort spawn fork exec wrap unwrap
serialize deserialize normalize denormalize hash sign authenticate
authorize redirect forward rewind seek skip yield await resume suspend
pause restart reload configure install uninstall deploy migrate backup
restore sync synchronize poll listen broadcast multiplex route throttle
debounce retry queue dequeue enqueue stash cache evict purge prune grind
translate rotate scale shear project unproject interpolate extrapolate
quantize sample resample blend composite mask crop resize flip mirror
invert negate increment decrement multiply divide subtract shift
""".split()

# Irregular forms: (form, penn) pairs written verbatim.
IRREGULAR_VERB_FORMS = [
    ("is", "VBZ"), ("are", "VBP"), ("am", "VBP"), ("was", "VBD"),
    ("were", "VBD"), ("been", "VBN"), ("being", "VBG"),
    ("has", "VBZ"), ("had", "VBD"),
    ("does", "VBZ"), ("did", "VBD"), ("done", "VBN"),
    ("said", "VBD"), ("went", "VBD"), ("gone", "VBN"), ("got", "VBD"),
    ("gotten", "VBN"), ("made", "VBD"), ("knew", "VBD"), ("known", "VBN"),
    ("thought", "VBD"), ("took", "VBD"), ("taken", "VBN"), ("saw", "VBD"),
    ("seen", "VBN"), ("came", "VBD"), ("found", "VBD"), ("gave", "VBD"),
    ("given", "VBN"), ("told", "VBD"), ("felt", "VBD"), ("became", "VBD"),
    ("left", "VBD"), ("meant", "VBD"), ("kept", "VBD"), ("began", "VBD"),
    ("begun", "VBN"), ("heard", "VBD"), ("held", "VBD"), ("brought", "VBD"),
    ("wrote", "VBD"), ("written", "VBN"), ("sat", "VBD"), ("stood", "VBD"),
    ("lost", "VBD"), ("paid", "VBD"), ("met", "VBD"), ("led", "VBD"),
    ("understood", "VBD"), ("spoke", "VBD"), ("spoken", "VBN"),
    ("ran", "VBD"), ("grew", "VBD"), ("grown", "VBN"), ("drew", "VBD"),
    ("drawn", "VBN"), ("chose", "VBD"), ("chosen", "VBN"), ("broke", "VBD"),
    ("broken", "VBN"), ("ate", "VBD"), ("eaten", "VBN"), ("caught", "VBD"),
    ("taught", "VBD"), ("bought", "VBD"), ("sold", "VBD"), ("sent", "VBD"),
    ("built", "VBD"), ("won", "VBD"), ("fell", "VBD"), ("fallen", "VBN"),
    ("swapped", "VBD"), ("swapping", "VBG"),
]

# Noun stems: everyday English, domain examples, and code vocabulary.
NOUNS = """
time year people way day man thing woman life child world school state
family student group country problem hand part place case week company
system program question work government number night point home water room
mother area money story fact month lot right study book eye job word
business issue side kind head house service friend father power hour game
line end member law car city community name president team minute idea kid
body information parent face level office door health person art war
history party result reason research girl guy moment air teacher force
education foot boy age policy process music market sense nation plan
college interest death experience effect use class control care field
development role student road shoe faucet street dog cat bird fish horse
token user list node tree graph map set array vector buffer cache index
key value item element entry record column row table database query
request response message event handler listener callback function method
object instance type interface module package library framework thread
task queue stack heap memory pointer reference address offset size length
count width height depth color image pixel texture shader vertex matrix
transform position rotation scale velocity acceleration mass energy
temperature pressure sensor device driver port socket connection session
client server host proxy gateway router packet frame stream channel signal
status flag option setting config configuration context scope namespace
path file directory folder document page section header footer title
label button widget window dialog menu toolbar icon cursor mouse keyboard
screen display monitor printer scanner camera microphone speaker battery
charger cable wire board chip circuit gate register instruction opcode
operand assembler compiler interpreter lexer tokenizer grammar syntax
expression statement block loop branch condition variable constant literal
identifier keyword operator precedence error warning exception failure
fault bug defect patch fix release version revision tag commit branch
merge conflict repository workspace project build target artifact
dependency requirement license author owner permission role group account
profile password credential secret certificate signature digest checksum
hash salt nonce seed random generator iterator comparator predicate
callback factory builder adapter decorator observer visitor strategy
command proxy facade bridge singleton prototype pool manager controller
model view template layout style theme font glyph character string text
paragraph sentence letter symbol digit numeral fraction integer float
double boolean byte bit nibble word quad tuple pair triple dozen score
total sum average mean median mode variance deviation quartile percentile
ratio rate percentage proportion frequency amplitude phase wavelength
period cycle epoch timestamp date calendar clock timer interval duration
timeout deadline schedule agenda plan milestone sprint iteration backlog
ticket issue story epic feature scenario step outcome report summary
detail overview abstract introduction conclusion appendix chapter volume
edition series collection catalog inventory stock supply demand order
invoice receipt payment transaction transfer deposit withdrawal balance
budget cost price fee tax discount coupon voucher credit debit loan
interest mortgage insurance claim policy premium coverage benefit bonus
salary wage income revenue profit loss margin share dividend asset
liability equity capital fund portfolio investment return risk reward
tile disneyland head tail link cell slot bucket bin shelf rack drawer
cabinet locker vault safe chest box crate carton envelope wrapper sleeve
case cover lid cap plug valve pump fan motor engine gear wheel axle lever
spring damper brake clutch pedal handle knob switch dial gauge meter probe
needle thread yarn rope chain hook anchor net web mesh grid lattice
cluster shard replica partition segment chunk slice span range bound
limit threshold ceiling floor wall roof door gate fence bridge tunnel
road street avenue lane alley plaza square park garden yard field farm
forest mountain river lake ocean island beach desert valley canyon cliff
""".split()

IRREGULAR_PLURALS = [
    ("people", "NNS"), ("children", "NNS"), ("men", "NNS"), ("women", "NNS"),
    ("feet", "NNS"), ("teeth", "NNS"), ("mice", "NNS"), ("geese", "NNS"),
    ("indices", "NNS"), ("vertices", "NNS"), ("matrices", "NNS"),
    ("criteria", "NNS"), ("data", "NNS"), ("media", "NNS"),
    ("cities", "NNS"), ("copies", "NNS"), ("entries", "NNS"),
    ("queries", "NNS"), ("properties", "NNS"), ("libraries", "NNS"),
    ("dependencies", "NNS"), ("policies", "NNS"), ("factories", "NNS"),
]

ADJECTIVES = """
new good high old great big small large next early young important few
public bad same able last long little own other right best low late
general full far red cold hot scary beautiful black white real certain
short easy strong free true false current final global local static
dynamic maximum minimum total common simple complex valid invalid active
inactive empty dirty raw deep shallow internal external main primary
secondary temporary default custom visible hidden enabled disabled safe
unsafe fast slow dense sparse unique duplicate mutable immutable abstract
concrete virtual native remote nearby adjacent previous prior initial
terminal intermediate partial whole entire double single triple binary
decimal octal hexadecimal signed unsigned positive negative neutral
optional mandatory explicit implicit automatic manual lazy eager strict
loose tight loose weak strong stale fresh volatile persistent transient
synchronous asynchronous parallel serial sequential concurrent atomic
composite nested flat circular linear quadratic cubic exponential
logarithmic constant variable stable unstable robust fragile verbose
quiet silent loud bright dark light heavy soft hard smooth rough wide
narrow thick thin tall deep cheap expensive rich poor clean dirty
""".split()

COMPARATIVES = [
    ("bigger", "JJR"), ("biggest", "JJS"), ("smaller", "JJR"),
    ("smallest", "JJS"), ("higher", "JJR"), ("highest", "JJS"),
    ("lower", "JJR"), ("lowest", "JJS"), ("greater", "JJR"),
    ("greatest", "JJS"), ("better", "JJR"), ("worse", "JJR"),
    ("worst", "JJS"), ("faster", "JJR"), ("fastest", "JJS"),
    ("slower", "JJR"), ("slowest", "JJS"), ("newer", "JJR"),
    ("newest", "JJS"), ("older", "JJR"), ("oldest", "JJS"),
    ("earlier", "RBR"), ("later", "RBR"), ("longer", "JJR"),
    ("longest", "JJS"), ("shorter", "JJR"), ("shortest", "JJS"),
    ("nearest", "JJS"), ("farthest", "JJS"), ("deeper", "JJR"),
    ("deepest", "JJS"),
]

_ES_ENDINGS = ("s", "x", "z", "ch", "sh")
_VOWELS = "aeiou"


def _plural(stem: str) -> str:
    if stem.endswith("y") and len(stem) > 1 and stem[-2] not in _VOWELS:
        return stem[:-1] + "ies"
    if stem.endswith(_ES_ENDINGS):
        return stem + "es"
    return stem + "s"


def _third_person(stem: str) -> str:
    return _plural(stem)


def _past(stem: str) -> str:
    if stem.endswith("e"):
        return stem + "d"
    if stem.endswith("y") and len(stem) > 1 and stem[-2] not in _VOWELS:
        return stem[:-1] + "ied"
    return stem + "ed"


def _gerund(stem: str) -> str:
    if stem.endswith("e") and not stem.endswith("ee"):
        return stem[:-1] + "ing"
    if (
        len(stem) >= 3
        and stem[-1] not in _VOWELS + "wxy"
        and stem[-2] in _VOWELS
        and stem[-3] not in _VOWELS
    ):
        return stem + stem[-1] + "ing"
    return stem + "ing"


def build_entries() -> list[tuple[str, str]]:
    entries: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()

    def add(word: str, penn: str) -> None:
        key = (word.lower(), penn)
        if key not in seen:
            seen.add(key)
            entries.append(key)

    for w in PRONOUNS_PRP:
        add(w, "PRP")
    for w in PRONOUNS_PRPS:
        add(w, "PRP$")
    for w in DETERMINERS:
        add(w, "DT")
    for w in PREPOSITIONS:
        add(w, "IN")
    add("to", "TO")
    for w in CONJUNCTIONS:
        add(w, "CC")
    add("for", "CC")  # secondary reading; primary IN entry ranks first
    for w in MODALS:
        add(w, "MD")
    for w in ADVERBS:
        add(w, "RB")
    for w in PARTICLES:
        add(w, "RP")
    for w in NUMBER_WORDS:
        add(w, "CD")

    # Nouns before verbs: homographs default to the noun reading.
    for w in NOUNS:
        add(w, "NN")
        add(_plural(w), "NNS")
    for form, penn in IRREGULAR_PLURALS:
        add(form, penn)

    for w in VERBS:
        add(w, "VB")
        add(_third_person(w), "VBZ")
        add(_past(w), "VBD")
        add(_past(w), "VBN")
        add(_gerund(w), "VBG")
    for form, penn in IRREGULAR_VERB_FORMS:
        add(form, penn)

    for w in ADJECTIVES:
        add(w, "JJ")
    for form, penn in COMPARATIVES:
        add(form, penn)

    return entries


def main() -> None:
    entries = build_entries()
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", encoding="utf-8", newline="\n") as fh:
        for word, penn in entries:
            fh.write(f"{word}\t{penn}\n")
    print(f"wrote {len(entries)} entries to {OUT}")


if __name__ == "__main__":
    main()
