"""Write one reference page per qrank module, grouped by layer in the nav."""

from pathlib import Path

import mkdocs_gen_files

PACKAGE = "qrank"
SOURCE = Path(__file__).parent.parent / "src" / PACKAGE

# nav section -> modules, in reading order
SECTIONS: dict[str, tuple[str, ...]] = {
    "Continued fractions": ("cfrac", "muir", "pell"),
    "Invariants": ("complexity", "rank", "functor", "primes"),
    "Reports and sweeps": ("report", "sweep"),
    "Plumbing": ("settings", "logging_config", "user_dir", "errors"),
}
SKIPPED = {"__init__", "__main__"}


def _page(module: str) -> str:
    """Markdown for one module: a title, then the mkdocstrings directive."""
    return f"# `{PACKAGE}.{module}`\n\n::: {PACKAGE}.{module}\n"


def _unlisted() -> list[str]:
    listed = {name for names in SECTIONS.values() for name in names}
    found = {path.stem for path in SOURCE.glob("*.py")} - SKIPPED
    return sorted(found - listed)


nav = mkdocs_gen_files.Nav()
nav["Overview"] = "index.md"
with mkdocs_gen_files.open("reference/index.md", "w") as index:
    index.write(f"::: {PACKAGE}\n")

sections = {**SECTIONS, "Other": tuple(_unlisted())}
for section, modules in sections.items():
    for module in modules:
        source = SOURCE / f"{module}.py"
        if not source.exists():
            continue
        doc_path = f"{module}.md"
        nav[section, module] = doc_path
        with mkdocs_gen_files.open(f"reference/{doc_path}", "w") as page:
            page.write(_page(module))
        mkdocs_gen_files.set_edit_path(f"reference/{doc_path}", source)

with mkdocs_gen_files.open("reference/SUMMARY.md", "w") as summary:
    summary.writelines(nav.build_literate_nav())
