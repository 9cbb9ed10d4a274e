"""Shared fixtures: a miniature WordNet 3.0 database written with exact byte offsets."""

import pytest

from lexsum.lexicon import load_wordnet
from lexsum.textcore import load_stoplist

LEXNAMES = [
    ('adj.all', 3), ('adj.pert', 3), ('adv.all', 4), ('noun.Tops', 1), ('noun.act', 1),
    ('noun.animal', 1), ('noun.artifact', 1), ('noun.attribute', 1), ('noun.body', 1),
    ('noun.cognition', 1), ('noun.communication', 1), ('noun.event', 1), ('noun.feeling', 1),
    ('noun.food', 1), ('noun.group', 1), ('noun.location', 1), ('noun.motive', 1),
    ('noun.object', 1), ('noun.person', 1), ('noun.phenomenon', 1), ('noun.plant', 1),
    ('noun.possession', 1), ('noun.process', 1), ('noun.quantity', 1), ('noun.relation', 1),
    ('noun.shape', 1), ('noun.state', 1), ('noun.substance', 1), ('noun.time', 1),
    ('verb.body', 2), ('verb.change', 2), ('verb.cognition', 2), ('verb.communication', 2),
    ('verb.competition', 2), ('verb.consumption', 2), ('verb.contact', 2), ('verb.creation', 2),
    ('verb.emotion', 2), ('verb.motion', 2), ('verb.perception', 2), ('verb.possession', 2),
    ('verb.social', 2), ('verb.stative', 2), ('verb.weather', 2), ('adj.ppl', 3),
]

HEADER = '  1 WordNet 3.0 Copyright 2006 by Princeton University.  All rights reserved.  \n'

# key: (pos, lexname index, lemmas, [(pointer symbol, target key, source/target)], gloss)
SYNSETS = {
    'entity': ('n', 3, ['entity'], [('~', 'vehicle', '0000'), ('~', 'money', '0000')],
               'that which is perceived or known to have its own distinct existence'),
    'vehicle': ('n', 6, ['vehicle'], [('@', 'entity', '0000'), ('~', 'car', '0000')],
                'a conveyance that transports people or objects'),
    'car': ('n', 6, ['car', 'auto', 'automobile'],
            [('@', 'vehicle', '0000'), ('%p', 'wheel', '0000')],
            'a motor vehicle with four wheels; "he needs a car to get to work"'),
    'wheel': ('n', 6, ['wheel'], [('#p', 'car', '0000')],
              'a simple machine consisting of a circular frame with spokes'),
    'bank_river': ('n', 17, ['bank'], [],
                   'sloping land beside a body of water; "they pulled the canoe up on the bank"'),
    'bank_money': ('n', 14, ['bank', 'depository_financial_institution'], [],
                   'a financial institution that accepts deposits and channels the money into lending'),
    'money': ('n', 21, ['money'], [('@', 'entity', '0000')],
              'the most common medium of exchange; functions as legal tender'),
    'river': ('n', 17, ['river'], [],
              'a large natural stream of water'),
    'deposit': ('n', 21, ['deposit', 'sediment'], [],
                'money given as security for an article acquired for temporary use'),
    'drive': ('v', 38, ['drive'], [],
              'operate or control a vehicle; "drive a car or bus"'),
    'bank_verb': ('v', 40, ['bank', 'deposit'], [],
                  'put into a bank account; "She deposits her paycheck every month"'),
    'good': ('a', 0, ['good'], [('!', 'bad', '0101')],
             'having desirable or positive qualities'),
    'bad': ('a', 0, ['bad'], [('!', 'good', '0101')],
            'having undesirable or negative properties'),
    'quickly': ('r', 2, ['quickly', 'fast'], [],
                'with rapid movements'),
}

FILE_SUFFIX = {'n': 'noun', 'v': 'verb', 'a': 'adj', 'r': 'adv'}


def _synset_line(key, offsets, synsets=SYNSETS):
    pos, lexnum, lemmas, pointers, gloss = synsets[key]
    words = ' '.join(f'{lemma} 0' for lemma in lemmas)
    ptrs = ''.join(f' {sym} {offsets[target]:08d} {synsets[target][0]} {st}' for sym, target, st in pointers)
    frames = ' 01 + 02 00' if pos == 'v' else ''
    return (f'{offsets[key]:08d} {lexnum:02d} {pos} {len(lemmas):02x} {words} '
            f'{len(pointers):03d}{ptrs}{frames} | {gloss}  \n')


def build_wordnet(root, synsets=None):
    """Write lexnames, index, data and exception files for ``SYNSETS`` under ``root``.

    Offset fields are always eight digits, so line lengths do not depend on
    the offsets and one layout pass fixes every byte position.
    """
    synsets = SYNSETS if synsets is None else synsets
    placeholder = {key: 0 for key in synsets}
    offsets = {}
    for pos in FILE_SUFFIX:
        position = len(HEADER)
        for key, entry in synsets.items():
            if entry[0] == pos:
                offsets[key] = position
                position += len(_synset_line(key, placeholder, synsets))

    for pos, suffix in FILE_SUFFIX.items():
        lines = [HEADER] + [_synset_line(k, offsets, synsets) for k, e in synsets.items() if e[0] == pos]
        (root / f'data.{suffix}').write_bytes(''.join(lines).encode('ascii'))

        senses = {}
        for key, entry in synsets.items():
            if entry[0] == pos:
                for lemma in entry[2]:
                    senses.setdefault(lemma.lower(), []).append(offsets[key])
        index = [HEADER]
        for lemma in sorted(senses):
            offs = senses[lemma]
            index.append(f'{lemma} {pos} {len(offs)} 0 {len(offs)} 0 '
                         + ' '.join(f'{o:08d}' for o in offs) + '  \n')
        (root / f'index.{suffix}').write_text(''.join(index), encoding='ascii')
        (root / f'{suffix}.exc').write_text('drove drive\n' if pos == 'v' else '', encoding='ascii')

    (root / 'lexnames').write_text(
        ''.join(f'{i:02d}\t{name}\t{kind}\n' for i, (name, kind) in enumerate(LEXNAMES)),
        encoding='ascii')
    return offsets


@pytest.fixture(scope='session')
def wordnet_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp('wordnet')
    build_wordnet(root)
    return root


@pytest.fixture(scope='session')
def lexicon(wordnet_dir):
    return load_wordnet(wordnet_dir)


@pytest.fixture(scope='session')
def stoplist():
    return load_stoplist()


STORM_TEXT = (
    'The storm moved across the coast on Monday. Heavy rain flooded the river banks near the town. '
    'Officials opened shelters for families who left their homes. The river rose higher than any flood '
    'recorded in the last decade. Power lines fell and many roads were closed by water. Volunteers '
    'carried food and water to the shelters through the night. By Tuesday the rain had stopped and the '
    'river began to fall.'
)

MARKET_TEXT = (
    '<DOC><DOCNO> WSJ001 </DOCNO><TEXT>\n'
    'Stock prices fell sharply as investors sold technology shares. Analysts blamed rising interest '
    'rates for the decline. Several large funds moved money into bonds. The central bank said it would '
    'watch the market closely. Traders expect prices to stay volatile for the rest of the month.\n'
    '</TEXT></DOC>'
)

CAR_TEXT = (
    'The car crossed the river near the bank. A wheel fell off the car. '
    'The bank lent money for a new vehicle. Drive the vehicle to the river.'
)


@pytest.fixture
def corpus(tmp_path):
    """Two documents with two references each, DUC style."""
    docs = tmp_path / 'docs'
    models = tmp_path / 'models'
    docs.mkdir()
    models.mkdir()
    (docs / 'd061.txt').write_text(STORM_TEXT, encoding='utf-8')
    (docs / 'd062.txt').write_text(MARKET_TEXT, encoding='utf-8')
    (models / 'd061.A.txt').write_text('Heavy rain flooded the river and officials opened shelters.',
                                       encoding='utf-8')
    (models / 'd061_B.txt').write_text('A storm flooded the town and volunteers carried food.', encoding='utf-8')
    (models / 'd062.A.txt').write_text('Stock prices fell as rising interest rates worried investors.',
                                       encoding='utf-8')
    (models / 'd062-B.txt').write_text('Investors sold shares and moved money into bonds.', encoding='utf-8')
    return docs, models
