"""Installation recipe."""
import os
from typing import Dict

from setuptools import find_packages, setup

here = os.path.abspath(os.path.dirname(__file__))

version = {}  # type: Dict[str, str]
with open(os.path.join(here, 'hbba', '__version__.py')) as f:
    exec(f.read(), version)


def readme():
    """Load readme."""
    with open('README.rst') as f:
        return f.read()


setup(
    name='hbba-flows',
    version=version['__version__'],
    description='Exact error analysis, hardware estimation and design space exploration of HBBA approximate adders',
    license='Apache-2.0',
    keywords='approximate-computing adders error-analysis design-space-exploration',
    long_description=readme() + '\n\n',
    long_description_content_type='text/x-rst',
    packages=find_packages(exclude=['test']),
    python_requires='>=3.9',
    classifiers=[
        'License :: OSI Approved :: Apache Software License',
        'Intended Audience :: Science/Research',
        'programming language :: python :: 3.9',
        'development status :: 4 - Beta',
        'topic :: scientific/engineering :: electronic design automation (eda)'
    ],
    install_requires=[
        'more-itertools', 'noodles>=0.3.3', 'numpy>=1.17', 'pyparsing>=2.4', 'schema',
        'pyyaml>=5.1'
    ],
    extras_require={
        'test': ['assertionlib', 'codacy-coverage', 'mypy', 'pytest', 'pytest-cov',
                 'pytest-mock', 'pytest-pycodestyle', 'pytest-pydocstyle', 'typing_extensions'],
        'doc': ['sphinx>=2.1', 'sphinx-autodoc-typehints', 'sphinx_rtd_theme']
    },
    include_package_data=True,
    package_data={
        'hbba': ['data/*.yml']
    },
    entry_points={
        'console_scripts': [
            'hbba=hbba.workflows.run_workflow:main'
        ]
    }
)
