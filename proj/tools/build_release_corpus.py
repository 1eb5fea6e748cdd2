# Copyright 2026 The Codesoph Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds git repositories whose history is a package's release sequence.

Each release sdist listed in the manifest becomes one commit holding the
release's .py files, with fixed author/committer identity and dates, so the
same manifest always yields the same commit ids. The repositories can be
packed into bundles for offline use:

    python3 tools/build_release_corpus.py --manifest tools/release_corpus.json \
        --out /tmp/corpus --bundle-dir tests/data/release_corpus
"""

import argparse
import json
import os
import pathlib
import shutil
import subprocess
import tarfile
import tempfile
import zipfile

EPOCH = 1577836800  # 2020-01-01T00:00:00Z


def download(package, version, cache):
    cache.mkdir(parents=True, exist_ok=True)
    for path in cache.iterdir():
        if path.name.lower().startswith(f"{package.lower()}-{version}."):
            return path
    subprocess.run(
        ["pip", "download", "--no-deps", "--no-binary", ":all:",
         f"{package}=={version}", "-d", str(cache)],
        check=True, stdout=subprocess.DEVNULL)
    for path in cache.iterdir():
        name = path.name.lower().replace("_", "-")
        if name.startswith(f"{package.lower()}-{version}."):
            return path
    raise RuntimeError(f"sdist for {package}=={version} not found in {cache}")


def extract(archive, dest):
    if archive.suffix == ".zip":
        with zipfile.ZipFile(archive) as z:
            z.extractall(dest)
    else:
        with tarfile.open(archive) as t:
            t.extractall(dest)
    roots = [p for p in dest.iterdir() if p.is_dir()]
    return roots[0] if len(roots) == 1 else dest


def git(repo, *args, env=None):
    subprocess.run(["git", "-C", str(repo), *args], check=True, env=env,
                   stdout=subprocess.DEVNULL)


def build_repo(entry, out, cache):
    repo = out / entry["name"]
    if repo.exists():
        shutil.rmtree(repo)
    repo.mkdir(parents=True)
    git(repo, "init", "-q", "-b", "main")
    for i, version in enumerate(entry["versions"]):
        archive = download(entry["package"], version, cache)
        with tempfile.TemporaryDirectory() as tmp:
            root = extract(archive, pathlib.Path(tmp))
            for child in repo.iterdir():
                if child.name != ".git":
                    shutil.rmtree(child) if child.is_dir() else child.unlink()
            for src in sorted(root.rglob("*.py")):
                dst = repo / src.relative_to(root)
                dst.parent.mkdir(parents=True, exist_ok=True)
                shutil.copyfile(src, dst)
        date = f"{EPOCH + i * 86400} +0000"
        env = dict(os.environ,
                   GIT_AUTHOR_NAME="release", GIT_AUTHOR_EMAIL="release@example.invalid",
                   GIT_COMMITTER_NAME="release",
                   GIT_COMMITTER_EMAIL="release@example.invalid",
                   GIT_AUTHOR_DATE=date, GIT_COMMITTER_DATE=date)
        git(repo, "add", "-A")
        git(repo, "commit", "-q", "--allow-empty", "-m",
            f"{entry['package']} {version}", env=env)
    return repo


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--manifest", required=True)
    parser.add_argument("--out", required=True, help="where repositories go")
    parser.add_argument("--cache", default=None, help="sdist download cache")
    parser.add_argument("--bundle-dir", default=None)
    args = parser.parse_args()

    manifest = json.loads(pathlib.Path(args.manifest).read_text())
    out = pathlib.Path(args.out).resolve()
    cache = pathlib.Path(args.cache or out / ".sdists").resolve()
    for entry in manifest["repos"]:
        repo = build_repo(entry, out, cache)
        print(f"{entry['name']}: {len(entry['versions'])} releases -> {repo}")
        if args.bundle_dir:
            bundle_dir = pathlib.Path(args.bundle_dir).resolve()
            bundle_dir.mkdir(parents=True, exist_ok=True)
            git(repo, "bundle", "create", "-q",
                str(bundle_dir / f"{entry['name']}.bundle"), "--all")


if __name__ == "__main__":
    main()
