import pytest

from src import console
from src.builders import build_builtin
from src.gggr import GradedSetting


@pytest.fixture(scope="session", autouse=True)
def quiet_console():
    console.set_quiet(True)
    yield
    console.set_quiet(False)


@pytest.fixture(scope="session")
def sl2_3():
    return build_builtin("sl2", 3)


@pytest.fixture(scope="session")
def sl2_5():
    return build_builtin("sl2", 5)


@pytest.fixture(scope="session")
def gl2_3():
    return build_builtin("gl2", 3)


@pytest.fixture(scope="session")
def gl2_5():
    return build_builtin("gl2", 5)


@pytest.fixture(scope="session")
def gl2z2_5():
    return build_builtin("gl2-z2", 5)


@pytest.fixture(scope="session")
def sl2_3_setting(sl2_3):
    return GradedSetting(*sl2_3, threads=1)


@pytest.fixture(scope="session")
def sl2_5_setting(sl2_5):
    return GradedSetting(*sl2_5, threads=1)


@pytest.fixture(scope="session")
def gl2_3_setting(gl2_3):
    return GradedSetting(*gl2_3, threads=1)


@pytest.fixture(scope="session")
def gl2z2_5_setting(gl2z2_5):
    return GradedSetting(*gl2z2_5, threads=2)
