"""Shared corpus fixture: a small graded directory of raw Turkish text."""

import pytest

CORPUS_FILES = {
    "ELE/hayvanlar.txt": (
        "Kedi süt içti. Köpek bahçede koştu.\n"
        "Kuşlar ağaçta öttü. Balık suda yüzdü.\n"
    ),
    "ELE/okul.txt": (
        "Ali okula gitti. Öğretmen ders anlattı.\n"
        "Çocuklar oyun oynadı. Sonra eve döndüler.\n"
    ),
    "INT/sehir.txt": (
        "Ankara kalabalık bir şehirdir. İnsanlar sabah erkenden işe gider.\n"
        "Otobüsler ve metro her saat çalışır. Akşam parklar dolup taşar.\n"
    ),
    "ADV/bilim.txt": (
        "Prof. Dr. Ayşe Yılmaz, Ankara Üniversitesi'nde yürütülen "
        "araştırmayı anlattı. Çalışmaya göre öğrencilerin %40'ı günde "
        "3,5 saat ekran karşısında kalıyor.\n"
        "\n"
        "TÜBİTAK destekli proje, İstanbul ve İzmir'de de uygulanacak... "
        "Sonuçlar gelecek yıl açıklanacak.\n"
    ),
}


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    for relative, text in CORPUS_FILES.items():
        path = root / relative
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return root


_CRITERION_RESULTS: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if report.skipped:
        _CRITERION_RESULTS.setdefault(name, "SKIP")
    elif report.when == "call":
        if report.failed or _CRITERION_RESULTS.get(name) == "FAIL":
            _CRITERION_RESULTS[name] = "FAIL"
        else:
            _CRITERION_RESULTS[name] = "PASS"
    elif report.failed:
        _CRITERION_RESULTS[name] = "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _CRITERION_RESULTS.items():
        terminalreporter.write_line(f"{name}: {status}")
