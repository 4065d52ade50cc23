from setuptools import setup, find_packages


with open('README.md', 'r') as f:
    long_description = f.read()


setup(
    name='cmlnkit',
    version='0.0.1',
    description='Exact inference for Markov logic networks with complex weights via weighted model counting.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=('tests', 'examples', 'configs')),
    python_requires='>=3.7',
    install_requires=[
        'numpy',
        'pyyaml',
        'scipy',
        'sympy',
        'pyparsing>=3.0'
    ],
    extras_require={
        'test': ['flake8', 'pytest', 'hypothesis']
    },
    entry_points={
        'console_scripts': ['cmlnkit=cmlnkit.cli.main:main']
    },
)
