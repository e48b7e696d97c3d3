from setuptools import setup, find_packages

# Read requirements from the requirements.txt file
with open("./requirements.txt") as f:
    install_requires = [line.strip() for line in f if line.strip()]

setup(
    name='rm-paal',
    version='0.1.0',
    description='Projection-aggregation decoders for Reed-Muller codes with unique-projection scheduling.',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
    python_requires='>=3.10',
    install_requires=install_requires,
    entry_points={
        'console_scripts': ['rm-paal=cli.main:main'],
    },
)
