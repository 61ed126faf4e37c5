import pytest

from segspectral import SynthSpec, generate_synthetic, ingest_corpus


@pytest.fixture(scope="session")
def synth_corpus():
    """Default synthetic benchmark: 20 words, 500 sentences, seed 0."""
    return generate_synthetic(SynthSpec())


@pytest.fixture(scope="session")
def synth_model(synth_corpus):
    lines, _ = synth_corpus
    return ingest_corpus(lines, source="synthetic")
